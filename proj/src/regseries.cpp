#include "zpe/regseries.hpp"

#include "zpe/errors.hpp"
#include "zpe/special.hpp"

#include <cmath>
#include <numbers>

namespace zpe::regseries {

namespace {

constexpr double kPi = std::numbers::pi;

bool tail_ok(double epsilon, std::int64_t terms, double tol) {
  const double p = static_cast<double>(terms);
  return std::exp(-epsilon * p * p) / p < tol;
}

/// Upper bound on sum_{q>p} exp(-eps q^2)/q.
double tail_bound(double epsilon, std::int64_t p) {
  const double x = static_cast<double>(p);
  const double ratio = std::exp(-epsilon * (2.0 * x + 1.0));
  if (ratio >= 1.0) return INFINITY;
  return std::exp(-epsilon * (x + 1.0) * (x + 1.0)) / ((x + 1.0) * (1.0 - ratio));
}

}  // namespace

RegularizationParams::RegularizationParams(double epsilon, std::int64_t max_terms,
                                           double tail_tolerance)
    : epsilon_(epsilon), max_terms_(max_terms), tail_tolerance_(tail_tolerance) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("RegularizationParams: epsilon must be positive");
  }
  if (!(tail_tolerance > 0.0)) {
    throw DomainError("RegularizationParams: tail_tolerance must be positive");
  }
  if (max_terms < 1) throw DomainError("RegularizationParams: max_terms must be positive");
  if (!tail_ok(epsilon, max_terms, tail_tolerance)) {
    throw DomainError("RegularizationParams: max_terms too small for tail_tolerance");
  }
}

RegularizationParams RegularizationParams::for_epsilon(double epsilon, double tail_tolerance) {
  if (!(epsilon > 0.0) || !(tail_tolerance > 0.0)) {
    throw DomainError("RegularizationParams: epsilon and tail_tolerance must be positive");
  }
  // exp(-eps p^2) < tol is sufficient since p >= 1; walk down from there.
  auto terms = static_cast<std::int64_t>(std::ceil(std::sqrt(-std::log(tail_tolerance) / epsilon))) + 1;
  while (terms > 1 && tail_ok(epsilon, terms - 1, tail_tolerance)) --terms;
  return RegularizationParams(epsilon, terms, tail_tolerance);
}

double g_closed(double s) {
  if (std::abs(s - std::round(s)) < kIntegerSnap) return 0.0;
  return kPi * (0.5 - (s - std::floor(s)));
}

double g_regularized(double s, const RegularizationParams& params) {
  const double eps = params.epsilon();
  // Only the phase of p*s matters; reducing s first keeps the sine arguments small.
  const double x = s - std::round(s);
  double sum = 0.0;
  for (std::int64_t p = 1; p <= params.max_terms(); ++p) {
    const double pd = static_cast<double>(p);
    const double phase = std::remainder(pd * x, 1.0);
    sum += std::sin(2.0 * kPi * phase) / pd * std::exp(-eps * pd * pd);
    if (tail_bound(eps, p) < params.tail_tolerance()) break;
  }
  return sum;
}

double comb_term(std::int64_t n, double s, double epsilon) {
  if (s == 0.0) return 0.0;
  const double a = std::abs(s);
  const double nd = static_cast<double>(n);
  const double scale = kPi / std::sqrt(epsilon);
  double bracket;
  if (nd > a) {
    bracket = special::erfc(scale * (nd - a)) - special::erfc(scale * (nd + a));
  } else if (nd < a) {
    bracket = 2.0 - special::erfc(scale * (nd + a)) - special::erfc(scale * (a - nd));
  } else {
    bracket = special::erf(scale * (nd + a));
  }
  return (s > 0 ? 0.5 : -0.5) * kPi * bracket;
}

double remainder_r1(double s, double epsilon, const RegularizationParams& params) {
  if (!(epsilon > 0.0)) throw DomainError("remainder_r1: epsilon must be positive");
  const double a = std::abs(s);
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t n = 1;; ++n) {
    const double term = comb_term(n, s, epsilon);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    const double gap = static_cast<double>(n) - a;
    if (gap > 0.0 && 0.5 * kPi * std::exp(-kPi * kPi * gap * gap / epsilon) < params.tail_tolerance()) {
      break;
    }
  }
  return sum + comp;
}

double euler_maclaurin_identity_check(double s, double epsilon) {
  const auto params = RegularizationParams::for_epsilon(epsilon);
  const double integral = 0.5 * kPi * special::erf(kPi * s / std::sqrt(epsilon));
  return g_regularized(s, params) - (integral - kPi * s + remainder_r1(s, epsilon, params));
}

}  // namespace zpe::regseries
