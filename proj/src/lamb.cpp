#include "zpe/lamb.hpp"

#include "zpe/casimir.hpp"
#include "zpe/errors.hpp"
#include "zpe/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace zpe::lamb {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

LambContext::LambContext(double kappa_d, double kappa_star, double m_star)
    : kappa_d_(kappa_d), kappa_star_(kappa_star), m_star_(m_star) {
  if (!(kappa_d > 0.0) || !(kappa_star > 0.0) || !(m_star > 0.0) || !std::isfinite(m_star)) {
    throw DomainError("LambContext: scales must be positive and finite");
  }
  if (!(kappa_star > kappa_d)) {
    throw RegimeViolation("weak coupling violated: eta_star = kappa_star/kappa_d must exceed 1");
  }
  if (!(m_star > kappa_star)) {
    throw RegimeViolation("non-relativistic ordering violated: m_star must exceed kappa_star");
  }
}

double LambContext::log_factor() const noexcept { return std::log(m_star_ / kappa_star_); }

LambContext LambContext::from_ratios(double eta_star, double log_factor) {
  if (!(log_factor > 0.0)) {
    throw RegimeViolation("non-relativistic ordering violated: ln(m_star/kappa_star) must be positive");
  }
  return LambContext(1.0, eta_star, eta_star * std::exp(log_factor));
}

double bethe_term(int n, double eta_star) {
  const double k = 2.0 * n;
  return special::bernoulli_value(2 * n) / (k * (k - 1.0) * std::pow(eta_star, k)) *
         emsum::bethe_inner_sum(n);
}

double welton_term(int n, double eta_star) {
  const double k = 2.0 * n;
  return std::abs(special::bernoulli_value(2 * n)) / (k * (k - 1.0) * std::pow(eta_star, k));
}

namespace {

RelativeShift relative_series(const LambContext& ctx, std::optional<int> order,
                              double (*term)(int, double)) {
  if (order && (*order < 1 || *order > kMaxOrder)) {
    throw DomainError("relative shift: order must lie in [1, 60]");
  }
  const double eta = ctx.eta_star();
  const double inv_log = 1.0 / ctx.log_factor();
  auto scaled = [&](int n) {
    if (n > kMaxOrder) throw DomainError("order beyond the Bernoulli table");
    return term(n, eta) * inv_log;
  };
  RelativeShift out;
  out.series = emsum::asymptotic_eval(scaled, kMaxOrder, order);
  out.value = out.series.partial_sum;
  out.remainder_bound = out.series.remainder_bound;
  return out;
}

quad::QuadResult relative_quadrature(const LambContext& ctx, const casimir::SpectralWeight& w) {
  quad::QuadResult r = casimir::weight_integral_limit(w);
  const double scale = 1.0 / (kPi * ctx.log_factor());
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

}  // namespace

RelativeShift bethe_relative_shift(const LambContext& ctx, std::optional<int> order) {
  return relative_series(ctx, order, &bethe_term);
}

RelativeShift welton_relative_shift(const LambContext& ctx, std::optional<int> order) {
  return relative_series(ctx, order, &welton_term);
}

double leading_relative_shift(const LambContext& ctx) {
  const double x = ctx.kappa_d() / ctx.kappa_star();
  return x * x / (12.0 * ctx.log_factor());
}

quad::QuadResult bethe_relative_shift_quadrature(const LambContext& ctx) {
  const double eta = ctx.eta_star();
  return relative_quadrature(ctx, casimir::SpectralWeight{1.0, 1.0, -1, eta, eta});
}

quad::QuadResult welton_relative_shift_quadrature(const LambContext& ctx) {
  return relative_quadrature(ctx, casimir::SpectralWeight{1.0, 0.0, -2, 0.0, ctx.eta_star()});
}

double Material::reduced_mass_ratio() const noexcept {
  return electron_mass_ratio * hole_mass_ratio / (electron_mass_ratio + hole_mass_ratio);
}

void Material::validate() const {
  auto ok = [](double m) { return m > 0.0 && m < 10.0; };
  if (!ok(electron_mass_ratio) || !ok(hole_mass_ratio)) {
    throw DomainError("Material '" + name + "': mass ratios must lie in (0, 10)");
  }
}

Material builtin_material(std::string_view name) {
  if (name == "InAs") return Material{"InAs", 0.026, 0.41};
  if (name == "InAs:lh") return Material{"InAs:lh", 0.026, 0.026};
  throw DomainError("unknown material '" + std::string(name) + "'");
}

std::vector<std::string> builtin_material_names() { return {"InAs", "InAs:lh"}; }

std::string_view to_string(Carrier carrier) {
  switch (carrier) {
    case Carrier::electron: return "electron";
    case Carrier::hole: return "hole";
    case Carrier::exciton: return "exciton";
  }
  return "unknown";
}

Carrier parse_carrier(std::string_view name) {
  if (name == "electron") return Carrier::electron;
  if (name == "hole") return Carrier::hole;
  if (name == "exciton") return Carrier::exciton;
  throw DomainError("unknown carrier '" + std::string(name) + "'");
}

double carrier_mass_ratio(const Material& material, Carrier carrier) {
  material.validate();
  switch (carrier) {
    case Carrier::electron: return material.electron_mass_ratio;
    case Carrier::hole: return material.hole_mass_ratio;
    case Carrier::exciton: return material.reduced_mass_ratio();
  }
  throw DomainError("unknown carrier");
}

QdCutoffs qd_cutoffs(const Material& material, Carrier carrier, double R) {
  if (!(R > 0.0)) throw DomainError("qd_cutoffs: R must be positive");
  QdCutoffs c;
  c.lambda_star = kElectronComptonNm / carrier_mass_ratio(material, carrier);
  c.m_star = 1.0 / c.lambda_star;
  c.kappa_star = 7.0 * kPi * kPi / (12.0 * c.m_star * R * R);
  c.R_star = 0.5 * kPi * std::sqrt(7.0 / 3.0) * c.lambda_star;
  return c;
}

double validity_limit() { return 0.5 * std::sqrt(7.0 / 3.0); }

QdCutoffs QDotSystem::cutoffs() const { return qd_cutoffs(material, carrier, radius); }

double QDotSystem::validity_ratio() const {
  if (!(separation > 0.0)) throw DomainError("QDotSystem: separation must be positive");
  return radius * radius / (cutoffs().R_star * separation);
}

bool QDotSystem::valid() const {
  return radius > cutoffs().R_star && validity_ratio() < validity_limit();
}

double QDotSystem::eta_star() const {
  if (!(separation > 0.0)) throw DomainError("QDotSystem: separation must be positive");
  return cutoffs().kappa_star * separation / kPi;
}

double qd_relative_shift(const QDotSystem& system, QdRoute route) {
  const QdCutoffs c = system.cutoffs();
  if (!(system.radius > c.R_star)) {
    throw RegimeViolation("confinement bound violated: R must exceed R_star");
  }
  const double ratio = system.validity_ratio();
  if (!(ratio < validity_limit())) {
    throw RegimeViolation("weak coupling violated: R^2/(R_star d) must stay below (1/2) sqrt(7/3)");
  }
  if (route == QdRoute::direct) {
    return ratio * ratio / (14.0 * std::log(system.radius / c.R_star));
  }
  const LambContext ctx(kPi / system.separation, c.kappa_star, c.m_star);
  return leading_relative_shift(ctx);
}

SweepRow sweep_point(const Material& material, Carrier carrier, double R, double d) {
  const QDotSystem system{material, R, d, carrier};
  SweepRow row;
  row.R = R;
  row.d = d;
  row.carrier = carrier;
  row.eta_star = system.eta_star();
  row.validity_ratio = system.validity_ratio();
  row.valid = system.valid();
  if (!row.valid) {
    row.shift_leading = std::numeric_limits<double>::quiet_NaN();
    row.shift_order2 = std::numeric_limits<double>::quiet_NaN();
    return row;
  }
  row.shift_leading = qd_relative_shift(system, QdRoute::direct);
  const QdCutoffs c = system.cutoffs();
  row.shift_order2 = bethe_relative_shift(LambContext(kPi / d, c.kappa_star, c.m_star), 2).value;
  return row;
}

std::vector<SweepRow> sweep_radius(const Material& material, Carrier carrier, double d,
                                   const std::vector<double>& R_grid) {
  if (!std::is_sorted(R_grid.begin(), R_grid.end())) {
    throw DomainError("sweep_radius: grid must be sorted ascending");
  }
  std::vector<SweepRow> rows;
  rows.reserve(R_grid.size());
  for (double R : R_grid) rows.push_back(sweep_point(material, carrier, R, d));
  return rows;
}

std::vector<SweepRow> sweep_distance(const Material& material, Carrier carrier, double R,
                                     const std::vector<double>& d_grid) {
  if (!std::is_sorted(d_grid.begin(), d_grid.end())) {
    throw DomainError("sweep_distance: grid must be sorted ascending");
  }
  std::vector<SweepRow> rows;
  rows.reserve(d_grid.size());
  for (double d : d_grid) rows.push_back(sweep_point(material, carrier, R, d));
  return rows;
}

}  // namespace zpe::lamb
