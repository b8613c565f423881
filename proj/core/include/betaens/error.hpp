#pragma once

#include <stdexcept>
#include <string>

namespace betaens {

/// A parameter or input lies outside the domain of an operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to meet its contract (bracketing, convergence,
/// degeneracy). These indicate a bug or an input that overflows doubles.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw ParameterError(message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ParameterError(message);
}

}  // namespace detail
}  // namespace betaens
