#ifndef PATCHBOUND_ERRORS_HPP
#define PATCHBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace patchbound {

// Bad input: violated preconditions, malformed files, unknown options.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// File could not be opened, written, or parsed.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An iterative method ran out of iterations or broke down.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Inverse iteration failed to converge; carries the last iterate so callers
// can inspect or restart from it.
class ConvergenceError : public NumericalError {
public:
  ConvergenceError(const std::string& what, double last_lambda,
                   Eigen::VectorXd last_vector)
      : NumericalError(what),
        last_lambda(last_lambda),
        last_vector(std::move(last_vector)) {}

  double last_lambda;
  Eigen::VectorXd last_vector;
};

}  // namespace patchbound

#endif  // PATCHBOUND_ERRORS_HPP
