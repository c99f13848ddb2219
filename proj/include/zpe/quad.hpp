#pragma once

// Gauss-Kronrod (7/15) quadrature over [0, inf) and finite intervals.
//
// Breakpoint mode integrates cell by cell on [n, n+1] so that integrands with
// jumps at the integers are never sampled across a discontinuity. The
// integrand receives the cell index and the offset inside the cell alongside
// the abscissa, which lets periodic factors be evaluated from the offset
// without the rounding of s - floor(s) at large s.
//
// All accumulation is done in long double: the plate integrands cancel over
// thousands of cells down to a result many orders below the cell magnitudes.

#include <cstdint>
#include <functional>

namespace zpe::quad {

struct QuadSpec {
  double relative_tolerance = 1e-12;
  double absolute_tolerance = 1e-15;
  std::int64_t max_panels = std::int64_t{1} << 22;
  /// Breakpoint mode stops once the cutoff factor at a panel's left edge is below this.
  double tail_stop_threshold = 1e-16;

  /// Throws DomainError unless both tolerances are positive and max_panels >= 64.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t panels_used = 0;
  /// error_estimate <= relative_tolerance * |value| + absolute_tolerance.
  bool within_tolerance = false;
};

struct PanelPoint {
  long double s;       ///< abscissa, cell + offset
  std::int64_t cell;   ///< n for the panel [n, n+1]
  long double offset;  ///< s - n in [0, 1], exact at the nodes
};

using PanelIntegrand = std::function<long double(const PanelPoint&)>;
using RealFunction = std::function<long double(long double)>;

/// Breakpoint quadrature of f over [0, inf). After each panel [n, n+1] the
/// cutoff factor is evaluated at n+1; summation stops when it drops below
/// spec.tail_stop_threshold. Throws NonConvergence (with the partial sum) when
/// max_panels is reached first.
QuadResult integrate_panels(const PanelIntegrand& f, const RealFunction& cutoff_factor,
                            const QuadSpec& spec = {});

/// Integral of f over [0, inf).
/// With breakpoints_at_integers the panel scheme above is used, and the
/// cutoff factor is replaced by the ratio of the panel's absolute integral to
/// the running absolute integral; this suits integrands with a fast-decaying
/// envelope. Otherwise the interval is mapped by t = u/(1-u) onto [0, 1) and
/// integrated by global adaptive bisection, which also handles algebraic tails.
QuadResult integrate_semiinfinite(const RealFunction& f, bool breakpoints_at_integers,
                                  const QuadSpec& spec = {});

/// Global adaptive Gauss-Kronrod on [a, b]. At most max_panels subintervals.
QuadResult integrate_interval(const RealFunction& f, long double a, long double b,
                              const QuadSpec& spec = {});

}  // namespace zpe::quad
