#ifndef RCX_ERRORS_HPP
#define RCX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rcx {

// Parameter outside the documented domain of a formula or operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive enumeration requested beyond the supported vertex count.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Direct summation would exceed the configured term budget.
class BudgetExceeded : public std::length_error {
 public:
  BudgetExceeded(const std::string& what, double estimated_terms)
      : std::length_error(what), estimated_terms_(estimated_terms) {}
  double estimated_terms() const noexcept { return estimated_terms_; }

 private:
  double estimated_terms_;
};

// Covariance matrix with an eigenvalue below the PSD tolerance.
class NotPositiveSemidefinite : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

}  // namespace rcx

#endif  // RCX_ERRORS_HPP
