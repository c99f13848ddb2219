#include "zpe/special.hpp"

#include "zpe/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace zpe::special {

namespace {

Rational binomial(int n, int k) {
  Rational c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

BernoulliTable::BernoulliTable(int max_even_index) : max_index_(max_even_index) {
  if (max_even_index < 2 || max_even_index % 2 != 0) {
    throw DomainError("BernoulliTable: max_even_index must be an even integer >= 2");
  }
  numbers_.resize(max_index_ + 1);
  values_.resize(max_index_ + 1);
  numbers_[0] = 1;
  for (int m = 1; m <= max_index_; ++m) {
    if (m >= 3 && m % 2 == 1) {
      numbers_[m] = 0;
      continue;
    }
    Rational acc = 0;
    Rational c = 1;  // C(m+1, k), updated incrementally
    for (int k = 0; k < m; ++k) {
      acc += c * numbers_[k];
      c = c * (m + 1 - k) / (k + 1);
    }
    numbers_[m] = -acc / (m + 1);
  }
  for (int m = 0; m <= max_index_; ++m) {
    values_[m] = static_cast<double>(numbers_[m]);
  }
}

void BernoulliTable::check_even_index(int n) const {
  if (n < 2 || n % 2 != 0 || n > max_index_) {
    throw DomainError("bernoulli_number: index " + std::to_string(n) +
                      " must be even and within [2, " + std::to_string(max_index_) + "]");
  }
}

const Rational& BernoulliTable::exact(int n) const {
  check_even_index(n);
  return numbers_[n];
}

double BernoulliTable::value(int n) const {
  check_even_index(n);
  return values_[n];
}

const Rational& BernoulliTable::raw(int k) const {
  if (k < 0 || k > max_index_) {
    throw DomainError("BernoulliTable::raw: index out of range");
  }
  return numbers_[k];
}

const BernoulliTable& bernoulli_table() {
  static const BernoulliTable table;
  return table;
}

Rational bernoulli_number(int n) { return bernoulli_table().exact(n); }

double bernoulli_value(int n) { return bernoulli_table().value(n); }

double log_bernoulli_magnitude_bound(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("log_bernoulli_magnitude_bound: even n >= 2 required");
  const double zeta_bound = 1.0 + std::pow(2.0, -n) + std::pow(2.0, 1 - n) / (n - 1);
  return std::log(2.0) + std::lgamma(n + 1.0) + std::log(zeta_bound) -
         n * std::log(2.0 * std::numbers::pi);
}

double periodic_bernoulli(int order, double t) {
  const auto& table = bernoulli_table();
  if (order < 2 || order % 2 != 0 || order > table.max_even_index()) {
    throw DomainError("periodic_bernoulli: unsupported order " + std::to_string(order));
  }
  const double x = t - std::floor(t);
  // Horner on B_order(x) = sum_k C(order,k) B_k x^(order-k)
  double acc = 0.0;
  for (int k = 0; k <= order; ++k) {
    acc = acc * x + static_cast<double>(binomial(order, k)) * table.raw(k).convert_to<double>();
  }
  return acc;
}

double gamma_half_ratio(int p) {
  if (p < 0) throw DomainError("gamma_half_ratio: p must be nonnegative");
  double r = 1.0;
  for (int k = 0; k < p; ++k) r *= (k + 0.5) / (k + 1.0);
  return r;
}

namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257390;

// erf(x) = 2/sqrt(pi) e^{-x^2} sum_n 2^n x^{2n+1} / (2n+1)!!, all terms positive.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return kTwoOverSqrtPi * std::exp(-x2) * sum;
}

// erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), x > 0,
// evaluated with the modified Lentz algorithm.
double erfc_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * f);
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double r;
  if (ax <= 2.0) {
    r = erf_series(ax);
  } else if (ax < 6.0) {
    r = 1.0 - erfc_continued_fraction(ax);
  } else {
    r = 1.0;  // erfc(6) ~ 2e-17
  }
  return x < 0 ? -r : r;
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0) return 2.0 - erfc(-x);
  if (x <= 2.0) return 1.0 - erf_series(x);
  if (x > 27.3) return 0.0;
  return erfc_continued_fraction(x);
}

}  // namespace zpe::special
