#pragma once

#include "seadiag/joint_params.hpp"

#include <stdexcept>
#include <string>

namespace seadiag {

enum class ExcitationKind { open_loop_current, open_loop_voltage };

/// Open-loop sinusoidal drive: offset + amplitude * sin(2 pi f t), in A or V.
struct Excitation {
    ExcitationKind kind = ExcitationKind::open_loop_voltage;
    double amplitude = 0.0;
    double frequency = 0.0;  // Hz
    double offset = 0.0;

    double value(double t) const;
    /// d/dt of value(t).
    double rate(double t) const;

    bool operator==(const Excitation&) const = default;
};

void validate(const Excitation& excitation);

/// True state of the joint. theta_g is the gearbox output, which no sensor
/// observes directly.
struct PlantState {
    double t = 0.0;
    double theta_g = 0.0;  // deg
    double omega_g = 0.0;  // deg/s
    double theta_l = 0.0;  // deg
    double omega_l = 0.0;  // deg/s
    double i_m = 0.0;      // A
    double v_m = 0.0;      // V

    double theta_m(const JointParams& p) const { return p.g1 * theta_g; }
    double omega_m(const JointParams& p) const { return p.g1 * omega_g; }
};

struct PlantRates {
    double theta_g = 0.0;
    double omega_g = 0.0;
    double theta_l = 0.0;
    double omega_l = 0.0;
    double i_m = 0.0;
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(double t, const std::string& what);
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Torque reported by the spring deflection sensor of the real hardware:
/// k1 * d + k2 * d^2 with d = theta_l - theta_m / g1.
///
/// Positive when the load leads the gearbox. The torque acting on the load
/// is the negative of this value.
double true_spring_torque(const JointParams& params, double theta_l, double theta_m);

/// Time derivatives of the state for an applied voltage. The motor current
/// is taken from `state.i_m`; with zero inductance the current rate is 0 and
/// the caller is expected to hold i_m at its algebraic value.
PlantRates plant_derivatives(const JointParams& params, const PlantState& state,
                             double v_applied);

/// Rest state at t = 0 with the electrical channels resolved for the drive.
PlantState initial_state(const JointParams& params, const Excitation& excitation);

/// Advances by one classical RK4 step of size dt. Throws IntegrationError if
/// the result is not finite.
PlantState step(const JointParams& params, const PlantState& state,
                const Excitation& excitation, double dt);

} // namespace seadiag
