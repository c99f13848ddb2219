#include "zpe/casimir.hpp"

#include "zpe/errors.hpp"
#include "zpe/regseries.hpp"
#include "zpe/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace zpe::casimir {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr long double kPiL = std::numbers::pi_v<long double>;
}  // namespace

std::string_view to_string(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::gaussian: return "gaussian";
    case ProfileFamily::quartic: return "quartic";
    case ProfileFamily::sech: return "sech";
  }
  return "unknown";
}

ProfileFamily parse_profile(std::string_view name) {
  if (name == "gaussian") return ProfileFamily::gaussian;
  if (name == "quartic") return ProfileFamily::quartic;
  if (name == "sech") return ProfileFamily::sech;
  throw DomainError("unknown cutoff profile '" + std::string(name) + "'");
}

CutoffProfile::CutoffProfile(ProfileFamily family, double kappa_phi)
    : family_(family), kappa_phi_(kappa_phi) {
  if (!(kappa_phi > 0.0) || !std::isfinite(kappa_phi)) {
    throw DomainError("CutoffProfile: kappa_phi must be positive and finite");
  }
}

long double CutoffProfile::shape(long double x) const {
  switch (family_) {
    case ProfileFamily::gaussian: return std::exp(-x * x);
    case ProfileFamily::quartic: {
      const long double x2 = x * x;
      return std::exp(-x2 * x2);
    }
    case ProfileFamily::sech: {
      const long double e = std::exp(-std::fabs(x));
      return 2.0L * e / (1.0L + e * e);
    }
  }
  return 0.0L;
}

PlateGeometry::PlateGeometry(double plate_size_L, double separation_d)
    : L_(plate_size_L), d_(separation_d) {
  if (!(L_ > 0.0) || !(d_ > 0.0) || !std::isfinite(L_) || !std::isfinite(d_)) {
    throw DomainError("PlateGeometry: L and d must be positive and finite");
  }
}

double PlateGeometry::kappa_d() const noexcept { return kPi / d_; }

void SpectralWeight::validate() const {
  if (!(beta >= 0.0)) throw DomainError("SpectralWeight: beta must be nonnegative");
  if (!(eta >= 0.0)) throw DomainError("SpectralWeight: eta must be nonnegative");
  if (gamma <= -1 && !(eta > 0.0)) {
    throw DomainError("SpectralWeight: gamma <= -1 requires eta > 0 (no eta -> 0 limit)");
  }
  if (beta > 0.0) {
    if (!(xi > 0.0)) throw DomainError("SpectralWeight: beta > 0 requires xi > 0");
    if (xi < eta) throw DomainError("SpectralWeight: xi must not be below eta");
  }
}

double rho_free(double k) { return k * k / (kPi * kPi); }

double rho_correction(double k, double kappa_d) {
  if (!(kappa_d > 0.0)) throw DomainError("rho_correction: kappa_d must be positive");
  if (k < 0.0) throw DomainError("rho_correction: k must be nonnegative");
  return kappa_d * k / (kPi * kPi * kPi) * regseries::g_closed(k / kappa_d);
}

double quadrature_prefactor(const SpectralWeight& w, const PlateGeometry& geom) {
  const double kd = geom.kappa_d();
  return geom.volume() * std::pow(kd, w.gamma + 2.0 - w.beta) * w.amplitude / (kPi * kPi * kPi);
}

double expansion_prefactor(const SpectralWeight& w, const PlateGeometry& geom) {
  return quadrature_prefactor(w, geom) * kPi;
}

namespace {

/// (s+xi)^-beta (s^2+eta^2)^(gamma/2) without the cutoff.
long double weight_shape(const SpectralWeight& w, long double s) {
  long double v = 1.0L;
  if (w.beta != 0.0) v = std::pow(s + static_cast<long double>(w.xi), -static_cast<long double>(w.beta));
  const long double eta = w.eta;
  if (eta == 0.0L) {
    v *= std::pow(s, static_cast<long double>(w.gamma));
  } else {
    const long double q = s * s + eta * eta;
    if (w.gamma % 2 == 0) {
      v *= std::pow(q, static_cast<long double>(w.gamma / 2));
    } else {
      v *= std::pow(std::sqrt(q), static_cast<long double>(w.gamma));
    }
  }
  return v;
}

/// Regulated s-integral for one cutoff; returns the unscaled QuadResult.
quad::QuadResult regulated_integral(const SpectralWeight& w, ProfileFamily family, long double ratio,
                                    const quad::QuadSpec& spec) {
  const CutoffProfile shape_only(family, 1.0);
  const long double eta2 = static_cast<long double>(w.eta) * w.eta;
  auto cutoff = [&](long double s) { return shape_only.shape(ratio * std::sqrt(s * s + eta2)); };
  auto integrand = [&](const quad::PanelPoint& p) -> long double {
    const long double g = kPiL * (0.5L - p.offset);
    return g * weight_shape(w, p.s) * cutoff(p.s);
  };
  // The tail beyond N contributes about F(N)/12; a growing weight must be part of the stop test,
  // and the threshold is relative to the largest envelope value seen so far.
  long double peak = std::fabs(weight_shape(w, 0.0L)) * cutoff(0.0L);
  auto envelope = [&](long double s) {
    const long double e = std::fabs(weight_shape(w, s)) * cutoff(s);
    peak = std::max(peak, e);
    return peak > 0.0L ? e / peak : 1.0L;
  };
  return quad::integrate_panels(integrand, envelope, spec);
}

}  // namespace

quad::QuadResult h_casimir_quadrature(const SpectralWeight& w, const PlateGeometry& geom,
                                      const CutoffProfile& profile, const quad::QuadSpec& spec) {
  w.validate();
  const double pref = quadrature_prefactor(w, geom);
  if (w.amplitude == 0.0) return quad::QuadResult{0.0, 0.0, 0, true};
  const long double ratio = static_cast<long double>(geom.kappa_d()) / profile.kappa_phi();
  quad::QuadResult r = regulated_integral(w, profile.family(), ratio, spec);
  r.value *= pref;
  r.error_estimate *= std::abs(pref);
  return r;
}

quad::QuadResult weight_integral_limit(const SpectralWeight& w, const LimitOptions& options) {
  w.validate();
  if (options.levels < 2) throw DomainError("weight_integral_limit: need at least two levels");
  const double start = options.start_ratio > 0.0 ? options.start_ratio : 0.05 / std::max(w.eta, 1.0);

  // Neville table in h = ratio^2; each halving of the ratio divides h by 4.
  std::vector<std::vector<long double>> table;
  std::int64_t panels = 0;
  double last_error = 0.0;
  long double ratio = start;
  for (int k = 0; k < options.levels; ++k, ratio *= 0.5L) {
    const quad::QuadResult r = regulated_integral(w, options.family, ratio, options.spec);
    panels += r.panels_used;
    last_error = r.error_estimate;
    std::vector<long double> row{static_cast<long double>(r.value)};
    long double factor = 1.0L;
    for (int j = 1; j <= k; ++j) {
      factor *= 4.0L;
      row.push_back(row[j - 1] + (row[j - 1] - table[k - 1][j - 1]) / (factor - 1.0L));
    }
    table.push_back(std::move(row));
  }
  const auto& last = table.back();
  const auto& prev = table[table.size() - 2];
  const long double best = last.back();
  const long double spread = std::fabs(best - prev.back());
  quad::QuadResult out;
  out.value = static_cast<double>(best);
  // Rounding the long double result to double costs up to half an ulp; allow one.
  out.error_estimate = static_cast<double>(spread) + last_error +
                       std::numeric_limits<double>::epsilon() * std::abs(out.value);
  out.panels_used = panels;
  out.within_tolerance = out.error_estimate <= options.spec.relative_tolerance * std::abs(out.value) +
                                                   options.spec.absolute_tolerance;
  return out;
}

quad::QuadResult h_casimir_quadrature_limit(const SpectralWeight& w, const PlateGeometry& geom,
                                            const LimitOptions& options) {
  w.validate();
  const double pref = quadrature_prefactor(w, geom);
  if (w.amplitude == 0.0) return quad::QuadResult{0.0, 0.0, 0, true};
  quad::QuadResult r = weight_integral_limit(w, options);
  r.value *= pref;
  r.error_estimate *= std::abs(pref);
  return r;
}

std::vector<double> weight_taylor_coefficients(const SpectralWeight& w, int count) {
  w.validate();
  if (count < 1) return {};
  std::vector<double> left(count, 0.0);
  if (w.beta == 0.0) {
    left[0] = 1.0;
  } else {
    left[0] = std::pow(w.xi, -w.beta);
    for (int m = 0; m + 1 < count; ++m) {
      left[m + 1] = left[m] * (-(w.beta + m)) / ((m + 1) * w.xi);
    }
  }
  std::vector<double> right(count, 0.0);
  if (w.eta == 0.0) {
    if (w.gamma < count) right[w.gamma] = 1.0;
  } else {
    const double half = 0.5 * w.gamma;
    double binom = 1.0;  // C(gamma/2, k)
    const double inv_eta2 = 1.0 / (w.eta * w.eta);
    double power = std::pow(w.eta, w.gamma);
    for (int k = 0; 2 * k < count; ++k) {
      right[2 * k] = binom * power;
      binom = binom * (half - k) / (k + 1);
      power *= inv_eta2;
    }
  }
  std::vector<double> product(count, 0.0);
  for (int i = 0; i < count; ++i) {
    if (left[i] == 0.0) continue;
    for (int j = 0; i + j < count; ++j) product[i + j] += left[i] * right[j];
  }
  return product;
}

ExpansionResult h_casimir_expansion(const SpectralWeight& w, const PlateGeometry& geom,
                                    std::optional<int> order) {
  w.validate();
  if (order && (*order < 1 || *order > kMaxExpansionOrder)) {
    throw DomainError("h_casimir_expansion: order must lie in [1, " +
                      std::to_string(kMaxExpansionOrder) + "]");
  }
  // Indices up to 2 kMaxExpansionOrder keep the optimal-truncation probe of a_{r+1} defined.
  const std::vector<double> c = weight_taylor_coefficients(w, 2 * kMaxExpansionOrder + 2);
  auto term = [&](int n) {
    if (n > kMaxExpansionOrder) throw DomainError("expansion order beyond the Bernoulli table");
    const double k = 2.0 * n;
    return special::bernoulli_value(2 * n) / (k * (k - 1.0)) * c[2 * n - 2];
  };

  emsum::AsymptoticSeries series;
  const int r_min = w.gamma >= 0 ? w.gamma / 2 + 2 : 1;
  if (order) {
    series = emsum::asymptotic_eval(term, *order, *order);
  } else if (w.gamma >= 0 && w.beta == 0.0 && w.eta == 0.0) {
    series = emsum::asymptotic_eval(term, r_min, r_min);
    series.remainder_bound = 0.0;
    series.diverged = false;
  } else if (r_min == 1) {
    series = emsum::asymptotic_eval(term, kMaxExpansionOrder);
  } else {
    const int head = r_min - 1;
    auto shifted = [&](int n) { return term(n + head); };
    const emsum::AsymptoticSeries tail = emsum::asymptotic_eval(shifted, kMaxExpansionOrder - head);
    for (int n = 1; n <= head; ++n) {
      series.terms.push_back(term(n));
      series.partial_sum += series.terms.back();
    }
    series.terms.insert(series.terms.end(), tail.terms.begin(), tail.terms.end());
    series.partial_sum += tail.partial_sum;
    series.truncation_index = head + tail.truncation_index;
    series.remainder_bound = tail.remainder_bound;
    series.diverged = tail.diverged;
  }

  ExpansionResult out;
  out.prefactor = expansion_prefactor(w, geom);
  out.series = std::move(series);
  out.value = out.prefactor * out.series.partial_sum;
  out.remainder_bound = std::abs(out.prefactor) * out.series.remainder_bound;
  return out;
}

std::string_view to_string(EnergyRoute route) {
  switch (route) {
    case EnergyRoute::quadrature: return "quadrature";
    case EnergyRoute::expansion: return "expansion";
    case EnergyRoute::closed_form: return "closed_form";
  }
  return "unknown";
}

double casimir_energy(const PlateGeometry& geom, const CutoffProfile& profile, EnergyRoute route,
                      const quad::QuadSpec& spec) {
  const SpectralWeight w{0.5, 0.0, 2, 0.0, 0.0};
  switch (route) {
    case EnergyRoute::closed_form: {
      const double L = geom.plate_size();
      const double d = geom.separation();
      return -kPi * kPi * L * L / (720.0 * d * d * d);
    }
    case EnergyRoute::expansion: return h_casimir_expansion(w, geom).value;
    case EnergyRoute::quadrature: return h_casimir_quadrature(w, geom, profile, spec).value;
  }
  throw DomainError("casimir_energy: unknown route");
}

double bulk_energy_density(const CutoffProfile& profile) {
  quad::QuadSpec spec;
  spec.relative_tolerance = 1e-13;
  auto moment = [&](long double x) { return x * x * x * profile.shape(x); };
  const double integral = quad::integrate_semiinfinite(moment, false, spec).value;
  const double kp = profile.kappa_phi();
  return kp * kp * kp * kp * integral / (2.0 * kPi * kPi);
}

}  // namespace zpe::casimir
