#include "seadiag/plant.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace seadiag {

double Excitation::value(double t) const
{
    return offset + amplitude * std::sin(2.0 * std::numbers::pi * frequency * t);
}

double Excitation::rate(double t) const
{
    const double w = 2.0 * std::numbers::pi * frequency;
    return amplitude * w * std::cos(w * t);
}

void validate(const Excitation& e)
{
    if (!std::isfinite(e.amplitude) || e.amplitude < 0.0) {
        throw ConfigError("excitation.amplitude", "must be finite and >= 0");
    }
    if (!std::isfinite(e.frequency) || e.frequency < 0.0) {
        throw ConfigError("excitation.frequency", "must be finite and >= 0");
    }
    if (!std::isfinite(e.offset)) {
        throw ConfigError("excitation.offset", "must be finite");
    }
}

IntegrationError::IntegrationError(double t, const std::string& what)
    : std::runtime_error(fmt::format("integration failed at t = {} s: {}", t, what)), time_(t)
{
}

double true_spring_torque(const JointParams& p, double theta_l, double theta_m)
{
    const double d = theta_l - theta_m / p.g1;
    return p.k1 * d + p.k2 * d * d;
}

PlantRates plant_derivatives(const JointParams& p, const PlantState& s, double v_applied)
{
    const double tau_load = -true_spring_torque(p, s.theta_l, s.theta_m(p));
    const double tau_motor = p.k_t * p.g1 * s.i_m;

    PlantRates r;
    r.theta_g = s.omega_g;
    r.omega_g = (tau_motor - p.b_gear * s.omega_g - tau_load) / p.j_gear;
    r.theta_l = s.omega_l;
    r.omega_l = tau_load / p.j_load;
    if (p.l_motor > 0.0) {
        r.i_m = (v_applied - s.i_m * p.r_motor - p.k_e * s.omega_m(p)) / p.l_motor;
    }
    return r;
}

namespace {

bool current_is_state(const JointParams& p, const Excitation& e)
{
    return e.kind == ExcitationKind::open_loop_voltage && p.l_motor > 0.0;
}

/// Sets i_m and v_m at time s.t. from the drive and the mechanical state.
void resolve_electrical(const JointParams& p, const Excitation& e, PlantState& s)
{
    const double back_emf = p.k_e * s.omega_m(p);
    if (e.kind == ExcitationKind::open_loop_current) {
        s.i_m = e.value(s.t);
        s.v_m = s.i_m * p.r_motor + p.l_motor * e.rate(s.t) + back_emf;
        return;
    }
    s.v_m = e.value(s.t);
    if (p.l_motor == 0.0) {
        s.i_m = (s.v_m - back_emf) / p.r_motor;
    }
}

PlantRates stage_rates(const JointParams& p, const Excitation& e, PlantState s)
{
    resolve_electrical(p, e, s);
    PlantRates r = plant_derivatives(p, s, s.v_m);
    if (!current_is_state(p, e)) {
        r.i_m = 0.0;
    }
    return r;
}

PlantState advance(const PlantState& s, const PlantRates& r, double h)
{
    PlantState out = s;
    out.t = s.t + h;
    out.theta_g += h * r.theta_g;
    out.omega_g += h * r.omega_g;
    out.theta_l += h * r.theta_l;
    out.omega_l += h * r.omega_l;
    out.i_m += h * r.i_m;
    return out;
}

bool all_finite(const PlantState& s)
{
    return std::isfinite(s.theta_g) && std::isfinite(s.omega_g) && std::isfinite(s.theta_l)
        && std::isfinite(s.omega_l) && std::isfinite(s.i_m) && std::isfinite(s.v_m);
}

} // namespace

PlantState initial_state(const JointParams& params, const Excitation& excitation)
{
    PlantState s;
    resolve_electrical(params, excitation, s);
    return s;
}

PlantState step(const JointParams& p, const PlantState& s, const Excitation& e, double dt)
{
    if (!(dt > 0.0)) {
        throw ConfigError("dt", "must be > 0");
    }
    if (!all_finite(s)) {
        throw IntegrationError(s.t, "non-finite input state");
    }

    const PlantRates k1 = stage_rates(p, e, s);
    const PlantRates k2 = stage_rates(p, e, advance(s, k1, 0.5 * dt));
    const PlantRates k3 = stage_rates(p, e, advance(s, k2, 0.5 * dt));
    const PlantRates k4 = stage_rates(p, e, advance(s, k3, dt));

    PlantRates sum;
    sum.theta_g = (k1.theta_g + 2.0 * k2.theta_g + 2.0 * k3.theta_g + k4.theta_g) / 6.0;
    sum.omega_g = (k1.omega_g + 2.0 * k2.omega_g + 2.0 * k3.omega_g + k4.omega_g) / 6.0;
    sum.theta_l = (k1.theta_l + 2.0 * k2.theta_l + 2.0 * k3.theta_l + k4.theta_l) / 6.0;
    sum.omega_l = (k1.omega_l + 2.0 * k2.omega_l + 2.0 * k3.omega_l + k4.omega_l) / 6.0;
    sum.i_m = (k1.i_m + 2.0 * k2.i_m + 2.0 * k3.i_m + k4.i_m) / 6.0;

    PlantState next = advance(s, sum, dt);
    resolve_electrical(p, e, next);
    if (!all_finite(next)) {
        throw IntegrationError(next.t, "state became non-finite");
    }
    return next;
}

} // namespace seadiag
