#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace seadiag::dsp {

/// Continuous second-order section (n2 s^2 + n1 s + n0) / (d2 s^2 + d1 s + d0).
struct AnalogBiquad {
    std::array<double, 3> num{};  // {n0, n1, n2}
    std::array<double, 3> den{};  // {d0, d1, d2}
};

/// Discrete second-order section in transposed direct form II, a[0] == 1.
class Biquad {
public:
    Biquad() = default;
    Biquad(std::array<double, 3> b, std::array<double, 3> a);

    double step(double x);
    void reset() { s1_ = s2_ = 0.0; }

    const std::array<double, 3>& b() const { return b_; }
    const std::array<double, 3>& a() const { return a_; }

    /// H(z = 1).
    double dc_gain() const;
    /// |H(e^{j 2 pi f / fs})|.
    double magnitude(double f, double fs) const;
    /// True when both poles lie strictly inside the unit circle.
    bool stable() const;

private:
    std::array<double, 3> b_{1.0, 0.0, 0.0};
    std::array<double, 3> a_{1.0, 0.0, 0.0};
    double s1_ = 0.0;
    double s2_ = 0.0;
};

/// Tustin transform s = 2 fs (1 - z^-1) / (1 + z^-1), without prewarping.
Biquad bilinear(const AnalogBiquad& h, double fs);

/// Second-order Butterworth low-pass (Q = 1/sqrt(2)) at unit DC gain.
/// The cutoff is prewarped so the -3 dB point lands on `cutoff`.
class LowPass2 {
public:
    LowPass2(double cutoff, double fs);

    double step(double x) { return section_.step(x); }
    void reset() { section_.reset(); }

    double cutoff() const { return cutoff_; }
    double fs() const { return fs_; }
    const Biquad& section() const { return section_; }

private:
    double cutoff_;
    double fs_;
    Biquad section_;
};

/// Gaussian white noise through a first-order low-pass at `bandwidth`, scaled
/// so the stationary output standard deviation equals `std`. The filter state
/// starts from the stationary distribution, so there is no warm-up.
class BandLimitedNoise {
public:
    BandLimitedNoise(double std, double bandwidth, double fs, std::uint64_t seed);

    double next();

    /// Pole of the first-order section, exp(-2 pi bandwidth / fs).
    double pole() const { return pole_; }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> unit_{0.0, 1.0};
    double std_;
    double pole_;
    double drive_gain_;
    double state_ = 0.0;
};

} // namespace seadiag::dsp
