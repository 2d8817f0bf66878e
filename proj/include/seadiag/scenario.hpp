#pragma once

#include "seadiag/detector.hpp"
#include "seadiag/joint_params.hpp"
#include "seadiag/plant.hpp"
#include "seadiag/sensors.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seadiag {

/// Everything needed to reproduce one run.
struct Scenario {
    std::string label = "scenario";
    JointParams params;
    Excitation excitation;
    NoiseSpec noise;  // noise.seed mirrors `seed`
    std::vector<FaultSpec> faults;
    Thresholds thresholds;
    double duration = 10.0;      // s
    double dt = 5e-4;            // s, integrator step
    double sensor_rate = 1000.0; // Hz
    double cutoff_hz = 5.0;      // residual filter cutoff
    std::uint64_t seed = 1;

    /// Integrator steps per sensor sample.
    int decimation() const;
    /// floor(duration * sensor_rate) + 1, counting the t = 0 sample.
    std::size_t sample_count() const;

    bool operator==(const Scenario&) const = default;
};

/// Throws ConfigError naming the offending field.
void validate(const Scenario& scenario);

/// True for the published joint: k1 = 100, k2 = 0.02, g1 = 105.05, gr = 105,
/// k_eq = 80 and a 5 Hz residual filter.
bool uses_reference_parameters(const Scenario& scenario);

/// Malformed scenario text. `line()` is 1-based, 0 when the problem is not
/// tied to a line (e.g. an override).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what);
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Parses scenario text. Each override is "key=value" for a top-level key or
/// "section.key=value" and replaces (or adds) that entry before validation.
Scenario parse_scenario(std::string_view text, std::span<const std::string> overrides = {});

Scenario load_scenario(const std::filesystem::path& path,
                       std::span<const std::string> overrides = {});

/// Serializes with shortest round-trip number formatting, so
/// parse_scenario(to_text(s)) == s.
std::string to_text(const Scenario& scenario);

void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

} // namespace seadiag
