#pragma once

#include <stdexcept>
#include <string>

namespace gdiscord {

/// Malformed arguments: wrong dimensions, out-of-range parameters, bad files.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A covariance matrix that violates the uncertainty principle
/// (some symplectic eigenvalue below 1) or is not positive definite.
class unphysical_state : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical breakdown: singular conditioning blocks, exhausted budgets,
/// failed guard checks.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gdiscord
