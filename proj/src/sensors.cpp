#include "seadiag/sensors.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

namespace seadiag {

namespace {

constexpr std::array<std::string_view, kChannelCount> kChannelNames{
    "theta_m", "omega_m", "i_m", "v_m", "theta_l", "tau_sea"};

constexpr std::array<std::string_view, 3> kFaultKindNames{"none", "bias", "stuck"};

std::uint64_t channel_seed(std::uint64_t seed, Channel c)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

} // namespace

std::string_view to_string(Channel channel)
{
    return kChannelNames[static_cast<std::size_t>(channel)];
}

std::optional<Channel> parse_channel(std::string_view name)
{
    for (std::size_t i = 0; i < kChannelCount; ++i) {
        if (kChannelNames[i] == name) return kAllChannels[i];
    }
    return std::nullopt;
}

std::string_view to_string(FaultKind kind)
{
    return kFaultKindNames[static_cast<std::size_t>(kind)];
}

std::optional<FaultKind> parse_fault_kind(std::string_view name)
{
    for (std::size_t i = 0; i < kFaultKindNames.size(); ++i) {
        if (kFaultKindNames[i] == name) return static_cast<FaultKind>(i);
    }
    return std::nullopt;
}

double& TelemetryFrame::operator[](Channel c)
{
    switch (c) {
    case Channel::theta_m: return theta_m;
    case Channel::omega_m: return omega_m;
    case Channel::i_m: return i_m;
    case Channel::v_m: return v_m;
    case Channel::theta_l: return theta_l;
    case Channel::tau_sea: return tau_sea;
    }
    throw std::out_of_range("bad channel");
}

double TelemetryFrame::operator[](Channel c) const
{
    return const_cast<TelemetryFrame&>(*this)[c];
}

void validate(const FaultSpec& f)
{
    if (!std::isfinite(f.onset) || f.onset < 0.0) {
        throw ConfigError("fault.onset", "must be finite and >= 0");
    }
    if (f.kind == FaultKind::bias && !std::isfinite(f.bias_magnitude)) {
        throw ConfigError("fault.bias_magnitude", "bias fault needs a finite magnitude");
    }
}

void validate(const NoiseSpec& n, double fs)
{
    for (Channel c : kAllChannels) {
        const double s = n.std_of(c);
        if (!std::isfinite(s) || s < 0.0) {
            throw ConfigError(fmt::format("noise.std_{}", to_string(c)), "must be finite and >= 0");
        }
    }
    if (!(n.bandwidth > 0.0) || !(n.bandwidth < 0.5 * fs)) {
        throw ConfigError("noise.bandwidth", "must satisfy 0 < bandwidth < sensor_rate/2");
    }
}

namespace {

std::array<dsp::BandLimitedNoise, kChannelCount> make_streams(const NoiseSpec& spec, double fs)
{
    auto make = [&](Channel c) {
        return dsp::BandLimitedNoise(spec.std_of(c), spec.bandwidth, fs, channel_seed(spec.seed, c));
    };
    return {make(Channel::theta_m), make(Channel::omega_m), make(Channel::i_m),
            make(Channel::v_m),     make(Channel::theta_l), make(Channel::tau_sea)};
}

} // namespace

NoiseBank::NoiseBank(const NoiseSpec& spec, double fs) : streams_(make_streams(spec, fs)) {}

TelemetryFrame measure(const PlantState& s, const JointParams& p, NoiseBank& noise)
{
    TelemetryFrame f;
    f.t = s.t;
    f.theta_m = s.theta_m(p) + noise.next(Channel::theta_m);
    f.omega_m = s.omega_m(p) + noise.next(Channel::omega_m);
    f.i_m = s.i_m + noise.next(Channel::i_m);
    f.v_m = s.v_m + noise.next(Channel::v_m);
    f.theta_l = s.theta_l + noise.next(Channel::theta_l);
    f.tau_sea = true_spring_torque(p, s.theta_l, s.theta_m(p)) + noise.next(Channel::tau_sea);
    return f;
}

TelemetryFrame inject_fault(const TelemetryFrame& frame, const FaultSpec& fault,
                            std::optional<double> frozen)
{
    if (fault.kind == FaultKind::none || frame.t < fault.onset) {
        return frame;
    }
    TelemetryFrame out = frame;
    if (fault.kind == FaultKind::bias) {
        out[fault.channel] += fault.bias_magnitude;
    } else {
        if (!frozen) {
            throw ScenarioError(fmt::format(
                "stuck fault on {} at onset {} s has no earlier reading to freeze",
                to_string(fault.channel), fault.onset));
        }
        out[fault.channel] = *frozen;
    }
    return out;
}

TelemetryFrame FaultInjector::apply(const TelemetryFrame& frame)
{
    if (frame.t < fault_.onset) {
        last_pre_onset_ = frame[fault_.channel];
        return frame;
    }
    return inject_fault(frame, fault_, last_pre_onset_);
}

} // namespace seadiag
