#pragma once

#include "seadiag/detector.hpp"
#include "seadiag/plant.hpp"
#include "seadiag/residuals.hpp"
#include "seadiag/scenario.hpp"
#include "seadiag/sensors.hpp"

#include <vector>

namespace seadiag {

struct RunOptions {
    /// Keep the noise-free plant state at every sensor sample.
    bool record_truth = false;
};

struct RunResult {
    std::vector<TelemetryFrame> telemetry;
    std::vector<ResidualFrame> residuals;
    std::vector<PlantState> truth;  // empty unless RunOptions::record_truth
    DiagnosticReport report;
};

/// plant -> sensors -> faults -> residuals -> filter -> detector, one sensor
/// sample at a time. Deterministic in (scenario, scenario.seed).
RunResult run(const Scenario& scenario, const RunOptions& options = {});

} // namespace seadiag
