#pragma once

// Euler-Maclaurin summation with Bernoulli corrections, and evaluation of
// divergent asymptotic series by optimal truncation.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace zpe::emsum {

enum class DerivativeMode { analytic, finite_difference };

/// A scalar function together with a way to obtain its derivatives.
class SmoothFunction {
 public:
  using Value = std::function<double(double)>;
  /// (order m >= 1, t) -> f^(m)(t).
  using Derivative = std::function<double(int, double)>;

  static SmoothFunction analytic(Value f, Derivative derivative);
  /// Central differences with one Richardson step, h = eps^(1/(m+2)) * scale.
  /// Orders above kMaxFiniteDifferenceOrder throw DomainError.
  static SmoothFunction finite_difference(Value f, double scale = 1.0);

  double operator()(double t) const { return f_(t); }
  /// Order 0 returns f(t).
  double derivative(int order, double t) const;
  DerivativeMode mode() const noexcept { return mode_; }

  static constexpr int kMaxFiniteDifferenceOrder = 5;

 private:
  SmoothFunction(Value f, Derivative d, DerivativeMode mode, double scale)
      : f_(std::move(f)), d_(std::move(d)), mode_(mode), scale_(scale) {}

  Value f_;
  Derivative d_;
  DerivativeMode mode_;
  double scale_;
};

struct EmSumResult {
  double estimate = 0.0;
  /// b_{2n}/(2n)! [f^(2n-1)(N) - f^(2n-1)(0)] for n = 1..r.
  std::vector<double> correction_terms;
  /// |b_{2r}|/(2r)! * integral of |f^(2r)| over [0, N].
  double remainder_bound = 0.0;
};

inline constexpr int kMaxEulerMaclaurinOrder = 10;

/// Estimate of sum_{p=0}^{N} f(p). Throws DomainError for r outside [1, 10] or N < 0.
EmSumResult em_sum(const SmoothFunction& f, std::int64_t n_upper, int r);

struct AsymptoticSeries {
  /// Kept terms a_1..a_k.
  std::vector<double> terms;
  int truncation_index = 0;
  double partial_sum = 0.0;
  /// |a_{k+1}|, or |a_k| when a_{k+1} cannot be generated.
  double remainder_bound = 0.0;
  /// Some |a_{n+1}| > |a_n| was met at or before the truncation point.
  bool diverged = false;
};

using TermGenerator = std::function<double(int)>;

/// Sums a_1, a_2, ... and stops right before the first term whose magnitude
/// exceeds its predecessor, or after r_max terms. With fixed_order the sum is
/// taken to exactly that many terms regardless of growth.
AsymptoticSeries asymptotic_eval(const TermGenerator& term, int r_max,
                                 std::optional<int> fixed_order = std::nullopt);

/// b_{2n} / (2n (2n-1) z^(2n-1)): the n-th term of
/// ln Gamma(z) - (z - 1/2) ln z + z - ln(2 pi)/2.
double stirling_term(int n, double z);

/// sum_{p=0}^{n-1} (-1)^p Gamma(p+1/2)/(p! Gamma(1/2)); tends to 1/sqrt 2.
double bethe_inner_sum(std::int64_t n);

}  // namespace zpe::emsum
