#pragma once

#include <stdexcept>
#include <string>

namespace zpe {

/// Argument outside the mathematical domain of an operation (odd Bernoulli
/// index, unsupported order, eta = 0 with a negative power, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A physical validity condition is violated: weak coupling (kappa_d < kappa*),
/// the quantum-dot confinement bound, or the non-relativistic ordering.
class RegimeViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure ran out of budget before meeting its stopping rule.
/// Carries whatever had been accumulated so far.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double partial_value)
      : std::runtime_error(what), partial_value_(partial_value) {}

  double partial_value() const noexcept { return partial_value_; }

 private:
  double partial_value_;
};

}  // namespace zpe
