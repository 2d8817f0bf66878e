#pragma once

#include "seadiag/dsp.hpp"
#include "seadiag/joint_params.hpp"
#include "seadiag/sensors.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace seadiag {

enum class Constraint : std::size_t { torsional, dynamics, electrical };

inline constexpr std::size_t kConstraintCount = 3;
inline constexpr std::array<Constraint, kConstraintCount> kAllConstraints{
    Constraint::torsional, Constraint::dynamics, Constraint::electrical};

std::string_view to_string(Constraint c);

/// One value per constraint: torsional [Nm], dynamics [Nm], electrical [V].
struct ConstraintValues {
    std::array<double, kConstraintCount> values{};

    double& operator[](Constraint c) { return values[static_cast<std::size_t>(c)]; }
    double operator[](Constraint c) const { return values[static_cast<std::size_t>(c)]; }

    bool operator==(const ConstraintValues&) const = default;
};

struct ResidualFrame {
    double t = 0.0;
    ConstraintValues raw;       // |residual| per sample
    ConstraintValues filtered;  // low-pass of raw

    bool operator==(const ResidualFrame&) const = default;
};

/// A streaming discrete transfer function bound to its sample rate.
/// Rejects input whose timestamps do not advance by 1/fs.
class DiscreteTF {
public:
    DiscreteTF(dsp::Biquad section, double fs);

    double step(double t, double x);
    double fs() const { return fs_; }
    const dsp::Biquad& section() const { return section_; }

private:
    dsp::Biquad section_;
    double fs_;
    std::optional<double> last_t_;
};

/// Discrete realizations of the joint transfer function:
///   forward(s) = k_t gr k_sea / (J s^2 + B s + k_sea)          (current -> torque)
///   back(s)    = k_sea (J s^2 + B s) / (J s^2 + B s + k_sea)   (load angle -> torque)
struct DynamicsFilters {
    DiscreteTF forward;
    DiscreteTF back;
};

/// Tustin-discretizes both paths at fs. Throws ConfigError if a pole lands
/// on or outside the unit circle.
DynamicsFilters make_dynamics_filters(const JointParams& params, double fs);

/// |k_eq (theta_l - theta_m / gr) - tau_sea| with the nominal model values.
double torsional_residual(const TelemetryFrame& frame, const JointParams& params);

/// Signed joint-dynamics mismatch tau_load - forward(i_m) + back(theta_l).
///
/// tau_sea is reported with the load-leads-gearbox orientation used by the
/// torsional constraint, while the transfer function is written for the torque
/// acting on the load, so tau_load = -tau_sea.
double signed_dynamics_residual(const TelemetryFrame& frame, DynamicsFilters& filters);

double dynamics_residual(const TelemetryFrame& frame, DynamicsFilters& filters);

/// |v_m - i_m R - k_e omega_m|; the inductive term is neglected.
double electrical_residual(const TelemetryFrame& frame, const JointParams& params);

/// Raw residuals followed by one LowPass2 per constraint. Absolute values are
/// taken before filtering.
class ResidualGenerator {
public:
    ResidualGenerator(const JointParams& params, double fs, double cutoff_hz);

    ResidualFrame step(const TelemetryFrame& frame);

private:
    JointParams params_;
    DynamicsFilters dynamics_;
    std::array<dsp::LowPass2, kConstraintCount> smoothers_;
};

} // namespace seadiag
