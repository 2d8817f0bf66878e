#include "seadiag/joint_params.hpp"

#include <cmath>

namespace seadiag {

void derive_series_stiffness(JointParams& params)
{
    // 1/k_eq = 1/k_sea + 1/(4 k_sea)  =>  k_sea = 1.25 k_eq
    params.k_sea = params.k_eq * (1.0 + 1.0 / kGearToSeaRatio);
    params.k_gear = kGearToSeaRatio * params.k_sea;
}

namespace {

void require_positive(const char* name, double value)
{
    if (!(value > 0.0) || std::isnan(value)) {
        throw ConfigError(name, "must be strictly positive");
    }
}

void require_finite_positive(const char* name, double value)
{
    require_positive(name, value);
    if (!std::isfinite(value)) {
        throw ConfigError(name, "must be finite");
    }
}

void require_finite_nonnegative(const char* name, double value)
{
    if (!std::isfinite(value) || value < 0.0) {
        throw ConfigError(name, "must be finite and >= 0");
    }
}

} // namespace

void validate(const JointParams& p)
{
    require_finite_positive("k1", p.k1);
    if (!std::isfinite(p.k2)) {
        throw ConfigError("k2", "must be finite");
    }
    require_finite_positive("g1", p.g1);
    require_finite_positive("gr", p.gr);
    require_finite_positive("k_eq", p.k_eq);
    require_finite_positive("k_sea", p.k_sea);
    require_positive("k_gear", p.k_gear);
    require_finite_positive("j_gear", p.j_gear);
    require_finite_nonnegative("b_gear", p.b_gear);
    require_finite_positive("j_load", p.j_load);
    require_finite_positive("k_t", p.k_t);
    require_finite_nonnegative("k_e", p.k_e);
    require_finite_positive("r_motor", p.r_motor);
    require_finite_nonnegative("l_motor", p.l_motor);

    const double series = 1.0 / p.k_sea + 1.0 / p.k_gear;
    const double expected = 1.0 / p.k_eq;
    if (std::abs(series - expected) > 1e-9 * expected) {
        throw ConfigError("k_eq", "1/k_eq must equal 1/k_sea + 1/k_gear");
    }
}

} // namespace seadiag
