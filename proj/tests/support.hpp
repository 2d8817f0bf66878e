#pragma once

#include "seadiag/pipeline.hpp"
#include "seadiag/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

namespace seadiag::testing {

inline Scenario bundled(const std::string& name)
{
    return load_scenario(std::filesystem::path(SEADIAG_SCENARIO_DIR) / (name + ".scenario"));
}

/// Nominal scenario with the diagnostic model made exact: linear spring,
/// true gear ratio, rigid gear train, no inductance, no noise.
inline Scenario matched_model()
{
    Scenario s = bundled("nominal");
    s.label = "matched";
    JointParams& p = s.params;
    p.k2 = 0.0;
    p.g1 = p.gr;
    p.k_eq = p.k_sea = p.k1;
    p.k_gear = std::numeric_limits<double>::infinity();
    p.l_motor = 0.0;
    s.noise.std_per_channel.fill(0.0);
    s.faults.clear();
    return s;
}

/// Largest raw residual after `settling`, relative to the peak |tau_sea| for
/// the torque constraints and the peak |v_m| for the electrical one.
inline ConstraintValues relative_residual_peaks(const RunResult& r, double settling)
{
    double tau_scale = 0.0;
    double v_scale = 0.0;
    for (const TelemetryFrame& f : r.telemetry) {
        tau_scale = std::max(tau_scale, std::abs(f.tau_sea));
        v_scale = std::max(v_scale, std::abs(f.v_m));
    }
    ConstraintValues worst;
    for (const ResidualFrame& f : r.residuals) {
        if (f.t < settling) continue;
        for (Constraint c : kAllConstraints) worst[c] = std::max(worst[c], f.raw[c]);
    }
    worst[Constraint::torsional] /= tau_scale;
    worst[Constraint::dynamics] /= tau_scale;
    worst[Constraint::electrical] /= v_scale;
    return worst;
}

/// Same scenario sampled at `rate` with the integrator step scaled to match.
inline Scenario at_sensor_rate(Scenario s, double rate)
{
    s.dt *= s.sensor_rate / rate;
    s.sensor_rate = rate;
    return s;
}

inline Scenario with_seed(Scenario s, std::uint64_t seed)
{
    s.seed = seed;
    s.noise.seed = seed;
    return s;
}

} // namespace seadiag::testing
