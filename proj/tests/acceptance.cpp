// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "cli.hpp"
#include "zpe/casimir.hpp"
#include "zpe/emsum.hpp"
#include "zpe/lamb.hpp"
#include "zpe/regseries.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Quadrature and expansion reproduce -pi^2/720 L^2/d^3.
Outcome casimir_coefficient() {
  namespace cs = zpe::casimir;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const cs::PlateGeometry geom(1.0, 1.0);
  const cs::CutoffProfile profile(cs::ProfileFamily::gaussian, 1000.0 * geom.kappa_d());
  const double exact = -kPi * kPi / 720.0;
  const double quad = cs::casimir_energy(geom, profile, cs::EnergyRoute::quadrature);
  const double expansion = cs::casimir_energy(geom, profile, cs::EnergyRoute::expansion);
  const double elapsed = seconds_since(start);
  const double rq = std::abs(quad / exact - 1.0);
  const double re = std::abs(expansion / exact - 1.0);
  o.require(rq < 1e-3, fmt("quadrature relative error %.3e >= 1e-3", rq));
  o.require(re < 1e-12, fmt("expansion relative error %.3e >= 1e-12", re));
  o.require(elapsed < 1.0, fmt("runtime %.3f s >= 1 s", elapsed));
  o.detail += (o.detail.empty() ? "" : " | ") + fmt("quad rel %.2e, expansion rel %.2e, %.3f s", rq, re, elapsed);
  return o;
}

double profile_spread(double kratio) {
  namespace cs = zpe::casimir;
  const cs::PlateGeometry geom(1.0, 1.0);
  std::vector<double> e;
  for (auto f : {cs::ProfileFamily::gaussian, cs::ProfileFamily::quartic, cs::ProfileFamily::sech}) {
    e.push_back(cs::casimir_energy(geom, cs::CutoffProfile(f, kratio * geom.kappa_d()),
                                   cs::EnergyRoute::quadrature));
  }
  double spread = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      spread = std::max(spread, std::abs(e[i] - e[j]) / std::min(std::abs(e[i]), std::abs(e[j])));
    }
  }
  return spread;
}

// 2. The plate term does not depend on the cutoff family.
Outcome regulator_independence() {
  Outcome o;
  const double s2 = profile_spread(1e2);
  const double s3 = profile_spread(1e3);
  const double s4 = profile_spread(1e4);
  o.require(s3 <= 2e-3, fmt("pairwise spread at 1e3 is %.3e > 2e-3", s3));
  o.require(s2 >= 5.0 * s4, fmt("spread shrinks only %.2fx from 1e2 to 1e4", s2 / s4));
  o.detail += (o.detail.empty() ? "" : " | ") + fmt("spread 1e2 %.2e, 1e3 %.2e, 1e4 %.2e", s2, s3, s4);
  return o;
}

// 3. g-function suite.
Outcome g_function_suite() {
  namespace rs = zpe::regseries;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto params = rs::RegularizationParams::for_epsilon(1e-3);
  double worst_g = 0.0;
  for (int i = 0; i < 99; ++i) {
    const double s = 0.05 + 0.9 * i / 98.0;
    worst_g = std::max(worst_g, std::abs(rs::g_regularized(s, params) - rs::g_closed(s)));
  }
  const double r1 = rs::remainder_r1(2.5, 1e-4, rs::RegularizationParams::for_epsilon(1e-4));
  double worst_identity = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double s = 0.5 * i / 9.0;
    for (int j = 0; j < 10; ++j) {
      const double eps = std::pow(10.0, -4.0 + 4.0 * j / 9.0);
      worst_identity = std::max(worst_identity, std::abs(rs::euler_maclaurin_identity_check(s, eps)));
    }
  }
  const double elapsed = seconds_since(start);
  o.require(worst_g < 1e-8, fmt("interior grid error %.3e >= 1e-8", worst_g));
  o.require(std::abs(r1 - 2.0 * kPi) <= 1e-9, fmt("R1(2.5) - 2 pi = %.3e", r1 - 2.0 * kPi));
  o.require(worst_identity < 1e-9, fmt("identity residual %.3e >= 1e-9", worst_identity));
  o.require(elapsed < 1.0, fmt("runtime %.3f s >= 1 s", elapsed));
  o.detail += (o.detail.empty() ? "" : " | ") +
              fmt("grid %.2e, identity %.2e, R1 dev %.2e", worst_g, worst_identity, std::abs(r1 - 2.0 * kPi)) +
              fmt(", %.3f s", elapsed);
  return o;
}

// 4. Optimally truncated expansion against regulator-free quadrature.
Outcome expansion_oracle() {
  namespace cs = zpe::casimir;
  Outcome o;
  const cs::PlateGeometry geom(1.0, 1.0);
  double worst_ratio = 0.0;
  for (double eta : {2.0, 5.0, 10.0, 50.0}) {
    const cs::SpectralWeight welton{1.0, 0.0, -2, 0.0, eta};
    const cs::SpectralWeight bethe{1.0, 1.0, -1, eta, eta};
    for (const auto& [name, w] : {std::pair{"welton", welton}, std::pair{"bethe", bethe}}) {
      const auto e = cs::h_casimir_expansion(w, geom);
      const auto q = cs::h_casimir_quadrature_limit(w, geom);
      const double diff = std::abs(e.value - q.value);
      const double allowed = e.remainder_bound + q.error_estimate;
      worst_ratio = std::max(worst_ratio, diff / allowed);
      if (diff > allowed) {
        o.require(false, std::string(name) + fmt(" eta=%g: |diff| %.3e > %.3e", eta, diff, allowed));
      }
    }
  }
  o.detail += (o.detail.empty() ? "" : " | ") + fmt("worst |diff|/allowed %.3f over 8 cases", worst_ratio);
  return o;
}

// 5. At r = 1 both series equal (1/12) eta^-2 / log.
Outcome first_order_universality() {
  namespace lb = zpe::lamb;
  Outcome o;
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> log_eta(0.01, 4.0);
  std::uniform_real_distribution<double> log_l(0.05, 6.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double eta = std::pow(10.0, log_eta(rng));
    const auto ctx = lb::LambContext::from_ratios(eta, log_l(rng));
    const double expected = 1.0 / (12.0 * eta * eta * ctx.log_factor());
    for (double v : {lb::bethe_relative_shift(ctx, 1).value, lb::welton_relative_shift(ctx, 1).value,
                     lb::leading_relative_shift(ctx)}) {
      worst = std::max(worst, std::abs(v - expected) / expected);
    }
  }
  o.require(worst <= 1e-15, fmt("worst relative deviation %.3e > 1e-15", worst));
  o.detail += (o.detail.empty() ? "" : " | ") + fmt("worst relative deviation %.2e", worst);
  return o;
}

// 6. Bethe below Welton at optimal truncation.
Outcome bethe_below_welton() {
  namespace lb = zpe::lamb;
  Outcome o;
  std::string summary;
  for (double eta : {2.0, 3.0, 5.0, 10.0}) {
    const auto ctx = lb::LambContext::from_ratios(eta, 1.0);
    const auto b = lb::bethe_relative_shift(ctx);
    const auto w = lb::welton_relative_shift(ctx);
    o.require(b.value < w.value && b.series.truncation_index >= 2 && w.series.truncation_index >= 2,
              fmt("eta=%g: bethe %.6e vs welton %.6e", eta, b.value, w.value));
    summary += fmt("%g:", eta) + fmt("%.3e<%.3e ", b.value, w.value);
  }
  o.detail += (o.detail.empty() ? "" : " | ") + summary;
  return o;
}

// 7. The 1/14 prefactor and validity bound follow from the leading term and the dot cutoffs.
Outcome qd_route_agreement() {
  namespace lb = zpe::lamb;
  Outcome o;
  std::mt19937_64 rng(20240502);
  std::uniform_real_distribution<double> R_dist(0.2, 3.0);
  std::uniform_real_distribution<double> log_d(1.5, 4.0);
  const lb::Carrier carriers[] = {lb::Carrier::electron, lb::Carrier::hole, lb::Carrier::exciton};
  const auto material = lb::builtin_material("InAs");
  int checked = 0;
  double worst = 0.0;
  for (int i = 0; checked < 100 && i < 100000; ++i) {
    const lb::QDotSystem sys{material, R_dist(rng), std::pow(10.0, log_d(rng)), carriers[i % 3]};
    if (!sys.valid()) continue;
    ++checked;
    const double a = lb::qd_relative_shift(sys, lb::QdRoute::direct);
    const double b = lb::qd_relative_shift(sys, lb::QdRoute::via_leading);
    worst = std::max(worst, std::abs(a - b) / std::abs(a));
  }
  o.require(checked == 100, "fewer than 100 valid systems drawn");
  o.require(worst <= 1e-12, fmt("worst relative route gap %.3e > 1e-12", worst));
  o.detail += (o.detail.empty() ? "" : " | ") + fmt("worst relative route gap %.2e over %g systems", worst, checked);
  return o;
}

// 8. InAs electron at R = 1.5 nm, d = 100 nm, and the d^-2 law over 90..1000 nm.
Outcome inas_reference_point() {
  namespace lb = zpe::lamb;
  Outcome o;
  const auto material = lb::builtin_material("InAs");
  const lb::QDotSystem sys{material, 1.5, 100.0, lb::Carrier::electron};
  const double via = lb::qd_relative_shift(sys, lb::QdRoute::via_leading);
  const double direct = lb::qd_relative_shift(sys, lb::QdRoute::direct);
  o.require(std::abs(via - 7.6e-3) <= 0.2e-3, fmt("via-leading shift %.4e outside 7.6e-3 +- 0.2e-3", via));
  o.require(std::abs(direct - 7.6e-3) <= 0.2e-3, fmt("direct shift %.4e outside 7.6e-3 +- 0.2e-3", direct));
  std::vector<double> grid;
  for (double d = 90.0; d <= 1000.0 + 1e-9; d += 10.0) grid.push_back(d);
  const auto rows = lb::sweep_distance(material, lb::Carrier::electron, 1.5, grid);
  double worst = 0.0;
  bool all_valid = true;
  for (const auto& row : rows) {
    all_valid = all_valid && row.valid;
    // shift * d^2 is d-independent.
    const double scaled = row.shift_leading * row.d * row.d / (rows.front().shift_leading * 90.0 * 90.0);
    worst = std::max(worst, std::abs(scaled - 1.0));
  }
  o.require(all_valid, "a separation in [90, 1000] nm was flagged invalid");
  o.require(worst <= 1e-10, fmt("d^-2 scaling deviation %.3e > 1e-10", worst));
  o.detail += (o.detail.empty() ? "" : " | ") + fmt("shift %.4e (direct %.4e), d^-2 deviation %.2e", via, direct, worst);
  return o;
}

// 9. Euler-Maclaurin engine.
Outcome euler_maclaurin_engine() {
  namespace em = zpe::emsum;
  Outcome o;
  std::mt19937_64 rng(20240503);
  std::uniform_real_distribution<double> c_dist(-2.0, 2.0);
  double worst_poly = 0.0;
  for (int r = 1; r <= 3; ++r) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> c(2 * r);
      for (double& x : c) x = c_dist(rng);
      auto value = [c](double t) {
        double v = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
        return v;
      };
      auto derivative = [c](int m, double t) {
        double v = 0.0;
        for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(m);) {
          double falling = 1.0;
          for (int j = 0; j < m; ++j) falling *= static_cast<double>(k - j);
          v = v * t + falling * c[k];
        }
        return v;
      };
      const int n = 5 + trial;
      double direct = 0.0;
      double scale = 0.0;
      for (int p = 0; p <= n; ++p) {
        direct += value(p);
        scale += std::abs(value(p));
      }
      const auto res = em::em_sum(em::SmoothFunction::analytic(value, derivative), n, r);
      worst_poly = std::max(worst_poly, std::abs(res.estimate - direct) / scale);
    }
  }
  o.require(worst_poly < 1e-12, fmt("polynomial residual %.3e >= 1e-12", worst_poly));

  auto gauss = em::SmoothFunction::analytic([](double t) { return std::exp(-t * t); },
                                            [](int m, double t) {
                                              double h0 = 1.0;
                                              double h1 = 2.0 * t;
                                              for (int k = 1; k < m; ++k) {
                                                const double h2 = 2.0 * t * h1 - 2.0 * k * h0;
                                                h0 = h1;
                                                h1 = h2;
                                              }
                                              return ((m % 2) ? -h1 : h1) * std::exp(-t * t);
                                            });
  double gauss_direct = 0.0;
  for (int p = 0; p <= 20; ++p) gauss_direct += std::exp(-double(p) * p);
  for (int r = 1; r <= 3; ++r) {
    const auto res = em::em_sum(gauss, 20, r);
    o.require(std::abs(res.estimate - gauss_direct) <= res.remainder_bound,
              fmt("Gaussian r=%g error %.3e above bound %.3e", r, std::abs(res.estimate - gauss_direct),
                  res.remainder_bound));
  }

  const long double z = 10.0L;
  const long double reference =
      std::lgamma(z) - (z - 0.5L) * std::log(z) + z - 0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
  const auto stirling = em::asymptotic_eval([](int n) { return em::stirling_term(n, 10.0); }, 8);
  const double stirling_err = static_cast<double>(std::fabs(stirling.partial_sum - reference));
  // The bound is far below double resolution at z = 10; allow a few ulp of the sum.
  const double stirling_allowed =
      stirling.remainder_bound + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(stirling.partial_sum);
  o.require(stirling_err <= stirling_allowed,
            fmt("Stirling error %.3e > %.3e", stirling_err, stirling_allowed));

  const double inner = em::bethe_inner_sum(10000);
  o.require(std::abs(inner - 1.0 / std::sqrt(2.0)) <= 0.012,
            fmt("bethe_inner_sum(1e4) = %.6f", inner));
  o.detail += (o.detail.empty() ? "" : " | ") +
              fmt("poly %.2e, Stirling err %.2e (allowed %.2e)", worst_poly, stirling_err, stirling_allowed) +
              fmt(", inner sum %.5f", inner);
  return o;
}

// 10. Identical invocations give identical bytes.
Outcome cli_determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> invocations{
      {"gfunc", "--s", "-1:1:0.05", "--eps", "1e-3,1e-2"},
      {"casimir", "--profile", "all", "--kratio", "100"},
      {"hcasimir", "--eta", "5", "--kratio", "100"},
      {"lamb", "--eta", "3", "--logratio", "2"},
      {"qd-sweep", "--R", "1.5", "--d-grid", "90:1000:10"},
      {"em-check"},
  };
  for (const auto& args : invocations) {
    std::string first;
    for (int rep = 0; rep < 3; ++rep) {
      std::ostringstream out;
      std::ostringstream err;
      const int code = zpe::cli::run(args, out, err);
      if (code != zpe::cli::kExitOk) o.require(false, args[0] + " exited with " + std::to_string(code));
      if (rep == 0) {
        first = out.str();
      } else if (out.str() != first) {
        o.require(false, args[0] + " output differs between runs");
      }
    }
  }
  o.detail += (o.detail.empty() ? "" : " | ") + std::to_string(invocations.size()) + " commands x 3 runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"casimir-coefficient", casimir_coefficient},
      {"regulator-independence", regulator_independence},
      {"g-function-suite", g_function_suite},
      {"expansion-quadrature-oracle", expansion_oracle},
      {"first-order-universality", first_order_universality},
      {"bethe-below-welton", bethe_below_welton},
      {"qd-route-agreement", qd_route_agreement},
      {"inas-reference-point", inas_reference_point},
      {"euler-maclaurin-engine", euler_maclaurin_engine},
      {"cli-determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2zu %-28s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
