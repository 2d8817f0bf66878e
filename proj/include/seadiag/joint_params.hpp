#pragma once

#include "seadiag/errors.hpp"

namespace seadiag {

/// Physical constants of the joint. Angles are in degrees, so inertia,
/// damping and the back-EMF constant carry per-degree units.
///
/// k1, k2 and g1 describe the true (simulated) hardware. gr, k_eq, k_sea and
/// k_gear are the nominal values the diagnostics believe in. The remaining
/// constants are shared by both.
struct JointParams {
    double k1 = 100.0;    // Nm/deg
    double k2 = 0.02;     // Nm/deg^2
    double g1 = 105.05;
    double gr = 105.0;
    double k_eq = 80.0;   // Nm/deg
    double k_sea = 100.0; // Nm/deg
    double k_gear = 400.0;  // Nm/deg, +inf for a rigid gear train
    double j_gear = 0.02;   // Nm*s^2/deg, output side
    double b_gear = 2.0;    // Nm*s/deg
    double j_load = 0.1;    // Nm*s^2/deg
    double k_t = 0.05;      // Nm/A at the motor shaft
    double k_e = 8.726646259971648e-4;  // V*s/deg, motor side (0.05 V*s/rad)
    double r_motor = 1.0;   // Ohm
    double l_motor = 5e-4;  // H

    bool operator==(const JointParams&) const = default;
};

/// Series stiffness ratio used when only k_eq is known: k_gear = 4 * k_sea.
inline constexpr double kGearToSeaRatio = 4.0;

/// Fills k_sea and k_gear from k_eq using kGearToSeaRatio.
void derive_series_stiffness(JointParams& params);

/// Throws ConfigError naming the first invalid field.
void validate(const JointParams& params);

} // namespace seadiag
