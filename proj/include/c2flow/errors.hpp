#pragma once

#include <stdexcept>
#include <string>

namespace c2flow {

/// A time stepper produced a non-finite value (or the scalar solvers blew
/// past the runaway threshold). Carries the offending field and step index
/// when known; step < 0 means "not attached to a step count yet".
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& field, long step)
        : std::runtime_error(make_message(field, step)), field_(field), step_(step) {}

    const std::string& field() const noexcept { return field_; }
    long step() const noexcept { return step_; }

    DivergenceError with_step(long step) const { return DivergenceError(field_, step); }

private:
    static std::string make_message(const std::string& field, long step);

    std::string field_;
    long step_;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace c2flow
