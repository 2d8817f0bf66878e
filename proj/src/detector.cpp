#include "seadiag/detector.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace seadiag {

double Thresholds::of(Constraint c) const
{
    return const_cast<Thresholds&>(*this).of(c);
}

double& Thresholds::of(Constraint c)
{
    switch (c) {
    case Constraint::torsional: return torsional;
    case Constraint::dynamics: return dynamics;
    case Constraint::electrical: return electrical;
    }
    throw std::out_of_range("bad constraint");
}

void validate(const Thresholds& th)
{
    for (Constraint c : kAllConstraints) {
        const double eps = th.of(c);
        if (!(eps > 0.0) || !std::isfinite(eps)) {
            throw ConfigError(fmt::format("thresholds.{}", to_string(c)), "must be finite and > 0");
        }
    }
    if (!(th.settling >= 0.0) || !std::isfinite(th.settling)) {
        throw ConfigError("thresholds.settling", "must be finite and >= 0");
    }
}

std::string_view to_string(Verdict v)
{
    return v == Verdict::nominal ? "nominal" : "fault-detected";
}

Detector::Detector(Thresholds thresholds) : thresholds_(thresholds)
{
    validate(thresholds_);
}

void Detector::observe(const ResidualFrame& frame)
{
    if (last_t_ && !(frame.t > *last_t_)) {
        throw ScenarioError(fmt::format("residual frames out of order at t = {} s", frame.t));
    }
    last_t_ = frame.t;
    if (frame.t < thresholds_.settling) {
        return;
    }
    for (Constraint c : kAllConstraints) {
        const auto i = static_cast<std::size_t>(c);
        const double value = frame.filtered[c];
        ConstraintReport& r = state_[i];
        r.peak_filtered = std::max(r.peak_filtered, value);
        if (r.triggered) {
            continue;
        }
        if (value > thresholds_.of(c)) {
            r.triggered = true;
            r.first_crossing = frame.t;
        } else {
            pre_crossing_peak_[i] = std::max(pre_crossing_peak_[i], value);
        }
    }
}

DiagnosticReport Detector::report() const
{
    if (!last_t_) {
        throw ScenarioError("cannot evaluate an empty residual stream");
    }
    DiagnosticReport out;
    out.constraints = state_;
    for (Constraint c : kAllConstraints) {
        const auto i = static_cast<std::size_t>(c);
        out.constraints[i].margin = pre_crossing_peak_[i] / thresholds_.of(c);
        if (state_[i].triggered) {
            out.verdict = Verdict::fault_detected;
        }
    }
    return out;
}

DiagnosticReport evaluate(std::span<const ResidualFrame> frames, const Thresholds& thresholds)
{
    Detector detector(thresholds);
    for (const ResidualFrame& f : frames) {
        detector.observe(f);
    }
    return detector.report();
}

Thresholds tune_thresholds(std::span<const std::vector<ResidualFrame>> nominal_runs,
                           double safety_factor, double settling)
{
    if (nominal_runs.empty()) {
        throw ConfigError("runs", "need at least one nominal run to tune thresholds");
    }
    if (!(safety_factor > 0.0) || !std::isfinite(safety_factor)) {
        throw ConfigError("factor", "must be finite and > 0");
    }

    ConstraintValues peak;
    bool any = false;
    for (const auto& run : nominal_runs) {
        for (const ResidualFrame& f : run) {
            for (Constraint c : kAllConstraints) {
                if (!std::isfinite(f.filtered[c])) {
                    throw ScenarioError(fmt::format(
                        "non-finite {} residual at t = {} s", to_string(c), f.t));
                }
            }
            if (f.t < settling) continue;
            any = true;
            for (Constraint c : kAllConstraints) {
                peak[c] = std::max(peak[c], f.filtered[c]);
            }
        }
    }
    if (!any) {
        throw ConfigError("thresholds.settling", "no residual frames after the settling window");
    }

    Thresholds out;
    out.settling = settling;
    for (Constraint c : kAllConstraints) {
        if (!(peak[c] > 0.0)) {
            throw ScenarioError(fmt::format(
                "{} residual is identically zero after settling; cannot tune", to_string(c)));
        }
        out.of(c) = safety_factor * peak[c];
    }
    return out;
}

} // namespace seadiag
