#ifndef JPITT_ERRORS_HPP
#define JPITT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jpitt {

// Invalid input: violated precondition, bad parameter range, malformed query.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Evaluation requested at (or too close to) a pole of the underlying function.
class PoleError : public DomainError {
 public:
  explicit PoleError(const std::string& what) : DomainError(what) {}
};

// An iteration or series failed to reach the requested tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// An integrand violates the decay envelope required for truncation.
class EnvelopeError : public DomainError {
 public:
  explicit EnvelopeError(const std::string& what) : DomainError(what) {}
};

}  // namespace jpitt

#endif  // JPITT_ERRORS_HPP
