#pragma once

// The sawtooth g(s) = pi (1/2 - frac s), its Gaussian-damped Fourier series,
// and the erf comb that measures the gap between the two.

#include <cstdint>

namespace zpe::regseries {

/// Gaussian damping exp(-epsilon p^2) applied to the Fourier series of g.
/// Invariant: exp(-epsilon max_terms^2) / max_terms < tail_tolerance.
class RegularizationParams {
 public:
  /// Throws DomainError if the invariant does not hold or a field is not positive.
  RegularizationParams(double epsilon, std::int64_t max_terms, double tail_tolerance);

  /// Smallest max_terms satisfying the invariant.
  static RegularizationParams for_epsilon(double epsilon, double tail_tolerance = 1e-15);

  double epsilon() const noexcept { return epsilon_; }
  std::int64_t max_terms() const noexcept { return max_terms_; }
  double tail_tolerance() const noexcept { return tail_tolerance_; }

 private:
  double epsilon_;
  std::int64_t max_terms_;
  double tail_tolerance_;
};

/// Distance below which s is treated as an integer.
inline constexpr double kIntegerSnap = 1e-12;

/// pi (1/2 - frac s) off the integers, exactly 0 on them. Odd and 1-periodic.
double g_closed(double s);

/// sum_{p>=1} sin(2 pi p s)/p exp(-epsilon p^2), stopped once the tail
/// sum_{q>p} exp(-epsilon q^2)/q is below params.tail_tolerance.
double g_regularized(double s, const RegularizationParams& params);

/// (pi/2) sign(s) [erf(pi(n+|s|)/sqrt eps) - sign(n-|s|) erf(pi|n-|s||/sqrt eps)],
/// with differences of erf taken through erfc.
double comb_term(std::int64_t n, double s, double epsilon);

/// sum_{n>=1} comb_term(n, s, epsilon). Terms with n < |s| contribute about pi each;
/// summation stops at the first n > |s| with (pi/2) exp(-pi^2 (n-|s|)^2/eps) below
/// params.tail_tolerance.
double remainder_r1(double s, double epsilon, const RegularizationParams& params);

/// g_regularized(s) - [(pi/2) erf(pi s/sqrt eps) - pi s + remainder_r1(s)].
double euler_maclaurin_identity_check(double s, double epsilon);

}  // namespace zpe::regseries
