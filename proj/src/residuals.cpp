#include "seadiag/residuals.hpp"

#include <cmath>

#include <fmt/format.h>

namespace seadiag {

std::string_view to_string(Constraint c)
{
    switch (c) {
    case Constraint::torsional: return "torsional";
    case Constraint::dynamics: return "dynamics";
    case Constraint::electrical: return "electrical";
    }
    return "?";
}

DiscreteTF::DiscreteTF(dsp::Biquad section, double fs) : section_(section), fs_(fs) {}

double DiscreteTF::step(double t, double x)
{
    if (last_t_) {
        const double period = 1.0 / fs_;
        if (std::abs((t - *last_t_) - period) > 1e-6 * period) {
            throw ConfigError("sensor_rate", fmt::format(
                "filter built for {} Hz received samples {} s apart", fs_, t - *last_t_));
        }
    }
    last_t_ = t;
    return section_.step(x);
}

DynamicsFilters make_dynamics_filters(const JointParams& p, double fs)
{
    if (!(fs > 0.0) || !std::isfinite(fs)) {
        throw ConfigError("sensor_rate", "must be finite and > 0");
    }
    const std::array<double, 3> den{p.k_sea, p.b_gear, p.j_gear};

    dsp::AnalogBiquad forward;
    forward.num = {p.k_t * p.gr * p.k_sea, 0.0, 0.0};
    forward.den = den;

    dsp::AnalogBiquad back;
    back.num = {0.0, p.k_sea * p.b_gear, p.k_sea * p.j_gear};
    back.den = den;

    DynamicsFilters filters{DiscreteTF(dsp::bilinear(forward, fs), fs),
                            DiscreteTF(dsp::bilinear(back, fs), fs)};
    if (!filters.forward.section().stable() || !filters.back.section().stable()) {
        throw ConfigError("j_gear", "joint dynamics filter is unstable at this sample rate");
    }
    return filters;
}

double torsional_residual(const TelemetryFrame& f, const JointParams& p)
{
    return std::abs(p.k_eq * (f.theta_l - f.theta_m / p.gr) - f.tau_sea);
}

double signed_dynamics_residual(const TelemetryFrame& f, DynamicsFilters& filters)
{
    const double tau_load = -f.tau_sea;
    return tau_load - filters.forward.step(f.t, f.i_m) + filters.back.step(f.t, f.theta_l);
}

double dynamics_residual(const TelemetryFrame& f, DynamicsFilters& filters)
{
    return std::abs(signed_dynamics_residual(f, filters));
}

double electrical_residual(const TelemetryFrame& f, const JointParams& p)
{
    return std::abs(f.v_m - f.i_m * p.r_motor - p.k_e * f.omega_m);
}

ResidualGenerator::ResidualGenerator(const JointParams& params, double fs, double cutoff_hz)
    : params_(params),
      dynamics_(make_dynamics_filters(params, fs)),
      smoothers_{dsp::LowPass2(cutoff_hz, fs), dsp::LowPass2(cutoff_hz, fs),
                 dsp::LowPass2(cutoff_hz, fs)}
{
}

ResidualFrame ResidualGenerator::step(const TelemetryFrame& frame)
{
    ResidualFrame out;
    out.t = frame.t;
    out.raw[Constraint::torsional] = torsional_residual(frame, params_);
    out.raw[Constraint::dynamics] = dynamics_residual(frame, dynamics_);
    out.raw[Constraint::electrical] = electrical_residual(frame, params_);
    for (Constraint c : kAllConstraints) {
        out.filtered[c] = smoothers_[static_cast<std::size_t>(c)].step(out.raw[c]);
    }
    return out;
}

} // namespace seadiag
