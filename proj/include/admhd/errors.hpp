#pragma once

#include <stdexcept>
#include <string>

namespace admhd {

/// Invalid configuration or mismatched inputs (bad grid sizes, key errors, ...).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A structural invariant of a spectral field was violated (broken conjugate
/// symmetry, nonzero mean where none is allowed, ...).
class invariant_error : public std::runtime_error {
public:
    explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical blow-up during time integration. Carries the last time at which
/// the state was still finite.
class blowup_error : public std::runtime_error {
public:
    blowup_error(const std::string& what, double last_valid_time)
        : std::runtime_error(what), last_valid_time_(last_valid_time) {}
    double last_valid_time() const { return last_valid_time_; }

private:
    double last_valid_time_;
};

} // namespace admhd
