#pragma once

#include "seadiag/residuals.hpp"

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace seadiag {

/// Violation thresholds on the filtered residuals. Crossings before
/// `settling` seconds are ignored while the filters start up.
struct Thresholds {
    double torsional = 12.0;   // Nm
    double dynamics = 1.0;     // Nm
    double electrical = 1.0;   // V
    double settling = 0.2;     // s

    double of(Constraint c) const;
    double& of(Constraint c);

    bool operator==(const Thresholds&) const = default;
};

void validate(const Thresholds& thresholds);

struct ConstraintReport {
    bool triggered = false;
    std::optional<double> first_crossing;  // s
    double peak_filtered = 0.0;            // post-settling max
    double margin = 0.0;                   // pre-crossing post-settling max / epsilon
};

enum class Verdict { nominal, fault_detected };

std::string_view to_string(Verdict v);

struct DiagnosticReport {
    std::array<ConstraintReport, kConstraintCount> constraints{};
    Verdict verdict = Verdict::nominal;

    const ConstraintReport& operator[](Constraint c) const
    {
        return constraints[static_cast<std::size_t>(c)];
    }
};

/// Streaming threshold check. A constraint triggers on the first
/// post-settling frame whose filtered residual strictly exceeds its
/// threshold, and stays triggered.
class Detector {
public:
    explicit Detector(Thresholds thresholds);

    void observe(const ResidualFrame& frame);

    /// Throws ScenarioError if no frame has been observed.
    DiagnosticReport report() const;

    const Thresholds& thresholds() const { return thresholds_; }

private:
    Thresholds thresholds_;
    std::array<ConstraintReport, kConstraintCount> state_{};
    std::array<double, kConstraintCount> pre_crossing_peak_{};
    std::optional<double> last_t_;
};

DiagnosticReport evaluate(std::span<const ResidualFrame> frames, const Thresholds& thresholds);

/// Sets each threshold to safety_factor times the largest post-settling
/// filtered residual seen across the fault-free runs. `settling` is carried
/// into the result.
Thresholds tune_thresholds(std::span<const std::vector<ResidualFrame>> nominal_runs,
                           double safety_factor, double settling);

} // namespace seadiag
