#pragma once

#include "seadiag/dsp.hpp"
#include "seadiag/joint_params.hpp"
#include "seadiag/plant.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace seadiag {

enum class Channel : std::size_t { theta_m, omega_m, i_m, v_m, theta_l, tau_sea };

inline constexpr std::size_t kChannelCount = 6;
inline constexpr std::array<Channel, kChannelCount> kAllChannels{
    Channel::theta_m, Channel::omega_m, Channel::i_m,
    Channel::v_m,     Channel::theta_l, Channel::tau_sea};

std::string_view to_string(Channel channel);
std::optional<Channel> parse_channel(std::string_view name);

/// One timestamped set of sensor readings.
struct TelemetryFrame {
    double t = 0.0;
    double theta_m = 0.0;  // deg, motor side
    double omega_m = 0.0;  // deg/s, motor side
    double i_m = 0.0;      // A
    double v_m = 0.0;      // V
    double theta_l = 0.0;  // deg
    double tau_sea = 0.0;  // Nm

    double& operator[](Channel c);
    double operator[](Channel c) const;

    bool operator==(const TelemetryFrame&) const = default;
};

enum class FaultKind { none, bias, stuck };

std::string_view to_string(FaultKind kind);
std::optional<FaultKind> parse_fault_kind(std::string_view name);

struct FaultSpec {
    Channel channel = Channel::tau_sea;
    FaultKind kind = FaultKind::none;
    double onset = 0.0;           // s
    double bias_magnitude = 0.0;  // channel units

    bool operator==(const FaultSpec&) const = default;
};

void validate(const FaultSpec& fault);

struct NoiseSpec {
    std::array<double, kChannelCount> std_per_channel{};  // indexed by Channel
    double bandwidth = 50.0;  // Hz
    std::uint64_t seed = 0;

    double std_of(Channel c) const { return std_per_channel[static_cast<std::size_t>(c)]; }

    bool operator==(const NoiseSpec&) const = default;
};

void validate(const NoiseSpec& noise, double fs);

/// Independent band-limited noise stream per channel. Each channel's RNG is
/// seeded from (seed, channel), so channels never share draws.
class NoiseBank {
public:
    NoiseBank(const NoiseSpec& spec, double fs);

    double next(Channel c) { return streams_[static_cast<std::size_t>(c)].next(); }

private:
    std::array<dsp::BandLimitedNoise, kChannelCount> streams_;
};

/// Projects the true state onto the sensor channels and adds noise.
/// Draws one sample from every channel, in channel order.
TelemetryFrame measure(const PlantState& state, const JointParams& params, NoiseBank& noise);

/// Applies one fault to one frame. `frozen` is the channel's last value
/// strictly before onset and is required for a stuck fault past onset.
TelemetryFrame inject_fault(const TelemetryFrame& frame, const FaultSpec& fault,
                            std::optional<double> frozen);

/// Streaming wrapper around inject_fault that remembers the last pre-onset
/// value of the faulted channel. Frames must arrive in time order.
class FaultInjector {
public:
    explicit FaultInjector(FaultSpec fault) : fault_(fault) {}

    TelemetryFrame apply(const TelemetryFrame& frame);

    const FaultSpec& fault() const { return fault_; }

private:
    FaultSpec fault_;
    std::optional<double> last_pre_onset_;
};

} // namespace seadiag
