#include "seadiag/dsp.hpp"
#include "seadiag/joint_params.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace seadiag::dsp {

Biquad::Biquad(std::array<double, 3> b, std::array<double, 3> a) : b_(b), a_(a)
{
    if (a_[0] == 0.0) {
        throw ConfigError("a0", "leading denominator coefficient is zero");
    }
    for (auto& c : b_) c /= a[0];
    for (auto& c : a_) c /= a[0];
}

double Biquad::step(double x)
{
    const double y = b_[0] * x + s1_;
    s1_ = b_[1] * x - a_[1] * y + s2_;
    s2_ = b_[2] * x - a_[2] * y;
    return y;
}

double Biquad::dc_gain() const
{
    return (b_[0] + b_[1] + b_[2]) / (a_[0] + a_[1] + a_[2]);
}

double Biquad::magnitude(double f, double fs) const
{
    const std::complex<double> z1 = std::polar(1.0, -2.0 * std::numbers::pi * f / fs);
    const std::complex<double> z2 = z1 * z1;
    return std::abs((b_[0] + b_[1] * z1 + b_[2] * z2) / (a_[0] + a_[1] * z1 + a_[2] * z2));
}

bool Biquad::stable() const
{
    // Jury conditions for z^2 + a1 z + a2.
    return std::abs(a_[2]) < 1.0 && std::abs(a_[1]) < 1.0 + a_[2];
}

Biquad bilinear(const AnalogBiquad& h, double fs)
{
    const double c = 2.0 * fs;
    const double c2 = c * c;
    auto map = [&](const std::array<double, 3>& p) {
        const auto [p0, p1, p2] = p;
        return std::array<double, 3>{
            p2 * c2 + p1 * c + p0,
            2.0 * (p0 - p2 * c2),
            p2 * c2 - p1 * c + p0,
        };
    };
    return Biquad(map(h.num), map(h.den));
}

LowPass2::LowPass2(double cutoff, double fs) : cutoff_(cutoff), fs_(fs)
{
    if (!(fs > 0.0) || !std::isfinite(fs)) {
        throw ConfigError("sensor_rate", "must be finite and > 0");
    }
    if (!(cutoff > 0.0) || !(cutoff < 0.5 * fs)) {
        throw ConfigError("cutoff_hz", "must satisfy 0 < cutoff < fs/2");
    }
    const double w = 2.0 * fs * std::tan(std::numbers::pi * cutoff / fs);
    AnalogBiquad h;
    h.num = {w * w, 0.0, 0.0};
    h.den = {w * w, std::numbers::sqrt2 * w, 1.0};
    section_ = bilinear(h, fs);
}

BandLimitedNoise::BandLimitedNoise(double std, double bandwidth, double fs, std::uint64_t seed)
    : rng_(seed), std_(std)
{
    if (!(std >= 0.0) || !std::isfinite(std)) {
        throw ConfigError("noise.std", "must be finite and >= 0");
    }
    if (!(bandwidth > 0.0) || !(bandwidth < 0.5 * fs)) {
        throw ConfigError("noise.bandwidth", "must satisfy 0 < bandwidth < fs/2");
    }
    pole_ = std::exp(-2.0 * std::numbers::pi * bandwidth / fs);
    // y[n] = p y[n-1] + (1 - p) w[n] has variance (1 - p) / (1 + p) * var(w).
    drive_gain_ = (1.0 - pole_) * std * std::sqrt((1.0 + pole_) / (1.0 - pole_));
    state_ = std * unit_(rng_);
}

double BandLimitedNoise::next()
{
    if (std_ == 0.0) {
        return 0.0;
    }
    state_ = pole_ * state_ + drive_gain_ * unit_(rng_);
    return state_;
}

} // namespace seadiag::dsp
