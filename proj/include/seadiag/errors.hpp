#pragma once

#include <stdexcept>
#include <string>

namespace seadiag {

/// Thrown when a configuration value violates its invariant. `field()` names
/// the offending key so callers can point the user at it.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A run could not proceed, e.g. a stuck fault with nothing to freeze.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace seadiag
