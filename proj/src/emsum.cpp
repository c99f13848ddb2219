#include "zpe/emsum.hpp"

#include "zpe/errors.hpp"
#include "zpe/quad.hpp"
#include "zpe/special.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace zpe::emsum {

SmoothFunction SmoothFunction::analytic(Value f, Derivative derivative) {
  if (!f || !derivative) throw DomainError("SmoothFunction: evaluators must be set");
  return SmoothFunction(std::move(f), std::move(derivative), DerivativeMode::analytic, 1.0);
}

SmoothFunction SmoothFunction::finite_difference(Value f, double scale) {
  if (!f) throw DomainError("SmoothFunction: evaluator must be set");
  if (!(scale > 0.0)) throw DomainError("SmoothFunction: scale must be positive");
  return SmoothFunction(std::move(f), nullptr, DerivativeMode::finite_difference, scale);
}

namespace {

/// m-th central difference with step h; error O(h^2).
double central_difference(const SmoothFunction::Value& f, int m, double t, double h) {
  double sum = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= m; ++k) {
    const double x = t + (0.5 * m - k) * h;
    sum += ((k % 2 == 0) ? binom : -binom) * f(x);
    binom = binom * (m - k) / (k + 1);
  }
  return sum / std::pow(h, m);
}

}  // namespace

double SmoothFunction::derivative(int order, double t) const {
  if (order < 0) throw DomainError("SmoothFunction: negative derivative order");
  if (order == 0) return f_(t);
  if (mode_ == DerivativeMode::analytic) return d_(order, t);
  if (order > kMaxFiniteDifferenceOrder) {
    throw DomainError("SmoothFunction: order " + std::to_string(order) +
                      " needs analytic derivatives");
  }
  const double h = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (order + 2)) * scale_;
  const double coarse = central_difference(f_, order, t, h);
  const double fine = central_difference(f_, order, t, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

EmSumResult em_sum(const SmoothFunction& f, std::int64_t n_upper, int r) {
  if (r < 1 || r > kMaxEulerMaclaurinOrder) {
    throw DomainError("em_sum: r must lie in [1, " + std::to_string(kMaxEulerMaclaurinOrder) + "]");
  }
  if (n_upper < 0) throw DomainError("em_sum: n_upper must be nonnegative");
  const double n = static_cast<double>(n_upper);
  quad::QuadSpec spec;
  spec.relative_tolerance = 1e-14;
  spec.absolute_tolerance = 1e-300;
  spec.max_panels = 1 << 16;

  EmSumResult out;
  double estimate = 0.0;
  if (n_upper > 0) {
    estimate = quad::integrate_interval([&](long double t) { return f(static_cast<double>(t)); },
                                        0.0L, static_cast<long double>(n), spec)
                   .value;
  }
  estimate += 0.5 * (f(n) + f(0.0));
  double factorial = 1.0;  // (2k)!
  for (int k = 1; k <= r; ++k) {
    factorial *= (2.0 * k - 1.0) * (2.0 * k);
    const double coeff = special::bernoulli_value(2 * k) / factorial;
    const double term = coeff * (f.derivative(2 * k - 1, n) - f.derivative(2 * k - 1, 0.0));
    out.correction_terms.push_back(term);
    estimate += term;
  }
  out.estimate = estimate;
  if (n_upper > 0) {
    // A bound needs few digits; finite-difference noise in f^(2r) would otherwise exhaust the budget.
    quad::QuadSpec bound_spec = spec;
    bound_spec.relative_tolerance = 1e-6;
    auto abs_derivative = [&](long double t) { return std::fabs(f.derivative(2 * r, static_cast<double>(t))); };
    double abs_integral = 0.0;
    try {
      abs_integral = quad::integrate_interval(abs_derivative, 0.0L, static_cast<long double>(n), bound_spec).value;
    } catch (const NonConvergence& e) {
      abs_integral = e.partial_value();
    }
    out.remainder_bound = std::abs(special::bernoulli_value(2 * r)) / factorial * abs_integral;
  }
  return out;
}

AsymptoticSeries asymptotic_eval(const TermGenerator& term, int r_max, std::optional<int> fixed_order) {
  if (r_max < 1) throw DomainError("asymptotic_eval: r_max must be at least 1");
  if (fixed_order && *fixed_order < 1) throw DomainError("asymptotic_eval: order must be at least 1");
  const int limit = fixed_order ? *fixed_order : r_max;

  AsymptoticSeries out;
  double previous = 0.0;
  for (int n = 1; n <= limit; ++n) {
    const double a = term(n);
    if (n > 1 && std::abs(a) > std::abs(previous)) {
      out.diverged = true;
      if (!fixed_order) {
        out.remainder_bound = std::abs(a);
        return out;
      }
    }
    out.terms.push_back(a);
    out.truncation_index = n;
    out.partial_sum += a;
    previous = a;
  }
  try {
    out.remainder_bound = std::abs(term(limit + 1));
  } catch (const DomainError&) {
    out.remainder_bound = std::abs(previous);
  }
  return out;
}

double stirling_term(int n, double z) {
  const double k = 2.0 * n;
  return special::bernoulli_value(2 * n) / (k * (k - 1.0) * std::pow(z, k - 1.0));
}

double bethe_inner_sum(std::int64_t n) {
  if (n < 1) throw DomainError("bethe_inner_sum: n must be at least 1");
  double sum = 0.0;
  double ratio = 1.0;
  for (std::int64_t p = 0; p < n; ++p) {
    sum += (p % 2 == 0) ? ratio : -ratio;
    ratio *= (p + 0.5) / (p + 1.0);
  }
  return sum;
}

}  // namespace zpe::emsum
