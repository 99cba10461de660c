#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rcacpilot {

// Pitch reached the Euler-angle singularity band |Theta| >= pi/2 - 1e-3.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A recursive least squares update produced a non-finite gain or covariance.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::uint64_t step)
      : std::runtime_error(what), step_(step) {}

  std::uint64_t step() const noexcept { return step_; }

 private:
  std::uint64_t step_;
};

// Malformed config or mission file, bad CLI value, or unreadable path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rcacpilot
