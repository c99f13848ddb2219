#pragma once

// Special-function substrate: exact Bernoulli numbers, periodic Bernoulli
// functions, Gamma half-integer ratios and the error function.

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace zpe::special {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kDefaultMaxBernoulliIndex = 120;

/// Bernoulli numbers B_0..B_max as exact rationals (B_1 = -1/2 convention),
/// generated from sum_{k=0}^{n} C(n+1,k) B_k = 0. Immutable after construction.
class BernoulliTable {
 public:
  explicit BernoulliTable(int max_even_index = kDefaultMaxBernoulliIndex);

  int max_even_index() const noexcept { return max_index_; }

  /// Exact b_n for even n in [2, max_even_index]; throws DomainError otherwise.
  const Rational& exact(int n) const;
  /// Cached double value of b_n, same domain as exact().
  double value(int n) const;

  /// Any B_k, 0 <= k <= max_even_index (odd k >= 3 are zero).
  const Rational& raw(int k) const;

 private:
  void check_even_index(int n) const;

  int max_index_;
  std::vector<Rational> numbers_;
  std::vector<double> values_;
};

/// Process-wide table up to index 120, built on first use.
const BernoulliTable& bernoulli_table();

Rational bernoulli_number(int n);
double bernoulli_value(int n);

/// Upper bound on |b_n| valid for every even n >= 2, including indices past
/// the table: 2 n! zeta(n) / (2 pi)^n with zeta(n) <= 1 + 2^-n + 2^(1-n)/(n-1).
/// Returned as log to survive n! overflow.
double log_bernoulli_magnitude_bound(int n);

/// The 1-periodic function equal to the Bernoulli polynomial B_order on [0,1).
double periodic_bernoulli(int order, double t);

/// Gamma(p + 1/2) / (p! Gamma(1/2)) by the product recurrence; no Gamma calls.
double gamma_half_ratio(int p);

double erf(double x);
double erfc(double x);

}  // namespace zpe::special
