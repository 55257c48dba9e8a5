#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace pigd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A precondition of an operation was not met (bad dimension, out-of-range
// parameter, malformed input).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite values showed up inside an iteration.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The solver's objective blew past the divergence guard.
class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// An optional problem oracle (projection onto argmin, f_star, nu) is absent.
class UnsupportedOracle : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ContractViolation(what);
}

}  // namespace pigd
