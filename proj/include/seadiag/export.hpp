#pragma once

#include "seadiag/detector.hpp"
#include "seadiag/pipeline.hpp"
#include "seadiag/scenario.hpp"

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

namespace seadiag {

inline constexpr const char* kTelemetryHeader = "t,theta_m,omega_m,i_m,v_m,theta_l,tau_sea";
inline constexpr const char* kResidualHeader =
    "t,torsional_raw,torsional_filt,dynamics_raw,dynamics_filt,electrical_raw,electrical_filt";

void write_telemetry_csv(std::ostream& out, std::span<const TelemetryFrame> frames);
void write_residuals_csv(std::ostream& out, std::span<const ResidualFrame> frames);

/// JSON document with the report, thresholds and scenario label.
std::string report_json(const Scenario& scenario, const DiagnosticReport& report);

/// Writes telemetry.csv, residuals.csv and report.json into `dir`, creating
/// it if needed. Throws std::runtime_error carrying the failing path.
void export_csv(const Scenario& scenario, const RunResult& result,
                const std::filesystem::path& dir);

} // namespace seadiag
