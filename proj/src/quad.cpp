#include "zpe/quad.hpp"

#include "zpe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace zpe::quad {

void QuadSpec::validate() const {
  if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
    throw DomainError("QuadSpec: tolerances must be positive");
  }
  if (max_panels < 64) throw DomainError("QuadSpec: max_panels must be at least 64");
  if (!(tail_stop_threshold > 0.0)) throw DomainError("QuadSpec: tail_stop_threshold must be positive");
}

namespace {

constexpr long double kEps = std::numeric_limits<long double>::epsilon();

// Kronrod abscissae in decreasing order; odd indices are the Gauss-7 nodes.
constexpr long double kXgk[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
constexpr long double kWgk[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr long double kWg[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

struct RuleResult {
  long double value = 0;
  long double error = 0;
  long double resabs = 0;
};

/// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0;
  long double comp_ = 0;
};

/// One 15-point Kronrod evaluation of f on [a, b], error estimate as in QUADPACK qk15.
template <class F>
RuleResult gk15(const F& f, long double a, long double b) {
  const long double center = 0.5L * (a + b);
  const long double half = 0.5L * (b - a);
  const long double fc = f(center);
  long double resg = fc * kWg[3];
  long double resk = fc * kWgk[7];
  long double resabs = std::fabs(resk);
  long double fv1[7];
  long double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const long double dx = half * kXgk[j];
    const long double f1 = f(center - dx);
    const long double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const long double reskh = 0.5L * resk;
  long double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  }
  const long double h = std::fabs(half);
  RuleResult r;
  r.value = resk * half;
  r.resabs = resabs * h;
  resasc *= h;
  long double err = std::fabs((resk - resg) * half);
  if (resasc != 0 && err != 0) {
    err = resasc * std::min(1.0L, std::pow(200.0L * err / resasc, 1.5L));
  }
  r.error = std::max(50.0L * kEps * r.resabs, err);
  return r;
}

/// One panel: a single rule, bisected once when the rule misses the local tolerance.
template <class F>
RuleResult panel_rule(const F& f, long double a, long double b, const QuadSpec& spec) {
  RuleResult whole = gk15(f, a, b);
  const long double tol = spec.relative_tolerance * std::fabs(whole.value);
  if (whole.error <= tol) return whole;
  const long double mid = 0.5L * (a + b);
  const RuleResult left = gk15(f, a, mid);
  const RuleResult right = gk15(f, mid, b);
  RuleResult split;
  split.value = left.value + right.value;
  split.error = left.error + right.error;
  split.resabs = left.resabs + right.resabs;
  return split;
}

bool meets(long double value, long double err, const QuadSpec& spec) {
  return err <= spec.relative_tolerance * std::fabs(value) + spec.absolute_tolerance;
}

template <class CellFn, class StopFn>
QuadResult run_panels(const CellFn& cell_rule, const StopFn& stop_after, const QuadSpec& spec) {
  spec.validate();
  Accumulator value;
  long double err = 0;
  long double resabs = 0;
  for (std::int64_t n = 0; n < spec.max_panels; ++n) {
    const RuleResult r = cell_rule(n);
    value.add(r.value);
    err += r.error;
    resabs += r.resabs;
    if (stop_after(n, r, resabs)) {
      QuadResult out;
      out.value = static_cast<double>(value.value());
      out.error_estimate = static_cast<double>(err);
      out.panels_used = n + 1;
      out.within_tolerance = meets(value.value(), err, spec);
      return out;
    }
  }
  throw NonConvergence("breakpoint quadrature: max_panels reached before the tail criterion",
                       static_cast<double>(value.value()));
}

}  // namespace

QuadResult integrate_panels(const PanelIntegrand& f, const RealFunction& cutoff_factor,
                            const QuadSpec& spec) {
  auto cell_rule = [&](std::int64_t n) {
    auto local = [&](long double u) {
      return f(PanelPoint{static_cast<long double>(n) + u, n, u});
    };
    return panel_rule(local, 0.0L, 1.0L, spec);
  };
  auto stop_after = [&](std::int64_t n, const RuleResult&, long double) {
    return std::fabs(cutoff_factor(static_cast<long double>(n + 1))) < spec.tail_stop_threshold;
  };
  return run_panels(cell_rule, stop_after, spec);
}

QuadResult integrate_semiinfinite(const RealFunction& f, bool breakpoints_at_integers,
                                  const QuadSpec& spec) {
  if (breakpoints_at_integers) {
    auto cell_rule = [&](std::int64_t n) {
      const long double a = static_cast<long double>(n);
      return panel_rule(f, a, a + 1.0L, spec);
    };
    auto stop_after = [&](std::int64_t, const RuleResult& r, long double total_abs) {
      if (total_abs == 0) return false;
      return r.resabs < spec.tail_stop_threshold * total_abs;
    };
    return run_panels(cell_rule, stop_after, spec);
  }
  auto mapped = [&](long double u) -> long double {
    const long double w = 1.0L - u;
    return f(u / w) / (w * w);
  };
  return integrate_interval(mapped, 0.0L, 1.0L, spec);
}

QuadResult integrate_interval(const RealFunction& f, long double a, long double b,
                              const QuadSpec& spec) {
  spec.validate();
  struct Piece {
    long double a, b;
    RuleResult r;
    bool operator<(const Piece& o) const { return r.error < o.r.error; }
  };
  std::priority_queue<Piece> heap;
  Piece first{a, b, gk15(f, a, b)};
  long double value = first.r.value;
  long double err = first.r.error;
  heap.push(first);
  std::int64_t pieces = 1;
  bool stalled = false;
  while (!meets(value, err, spec)) {
    if (pieces >= spec.max_panels) {
      throw NonConvergence("adaptive quadrature: max_panels reached", static_cast<double>(value));
    }
    const Piece worst = heap.top();
    const long double mid = 0.5L * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      stalled = true;  // interval at machine resolution
      break;
    }
    heap.pop();
    Piece left{worst.a, mid, gk15(f, worst.a, mid)};
    Piece right{mid, worst.b, gk15(f, mid, worst.b)};
    value += left.r.value + right.r.value - worst.r.value;
    err += left.r.error + right.r.error - worst.r.error;
    heap.push(left);
    heap.push(right);
    ++pieces;
  }
  // Re-sum from the leaves to shed the drift of incremental updates.
  Accumulator total;
  long double total_err = 0;
  while (!heap.empty()) {
    total.add(heap.top().r.value);
    total_err += heap.top().r.error;
    heap.pop();
  }
  QuadResult out;
  out.value = static_cast<double>(total.value());
  out.error_estimate = static_cast<double>(total_err);
  out.panels_used = pieces;
  out.within_tolerance = !stalled && meets(total.value(), total_err, spec);
  return out;
}

}  // namespace zpe::quad
