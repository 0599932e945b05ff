#pragma once

#include <stdexcept>
#include <string>

namespace mntc {

/// Requested quantity is undefined because the two polariton branches
/// coalesce: |Delta| fell below the exceptional-point tolerance.
class ExceptionalPointError : public std::runtime_error {
  public:
    explicit ExceptionalPointError(const std::string &what) : std::runtime_error(what) {}
};

/// No real resonance wavevector exists (omega_m <= omega_c).
class NoResonanceError : public std::runtime_error {
  public:
    explicit NoResonanceError(const std::string &what) : std::runtime_error(what) {}
};

/// Real-space packet reached the edge of the site grid; moments over the
/// unwrapped site index are no longer meaningful.
class WrapAroundError : public std::runtime_error {
  public:
    explicit WrapAroundError(const std::string &what) : std::runtime_error(what) {}
};

/// Every fit start failed to reach the gradient tolerance.
class NonConvergenceError : public std::runtime_error {
  public:
    explicit NonConvergenceError(const std::string &what) : std::runtime_error(what) {}
};

/// Input series carries no usable signal for the requested fit.
class DegenerateDataError : public std::runtime_error {
  public:
    explicit DegenerateDataError(const std::string &what) : std::runtime_error(what) {}
};

/// Invalid configuration; `field()` names the offending entry.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string &what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    const std::string &field() const { return field_; }

  private:
    std::string field_;
};

} // namespace mntc
