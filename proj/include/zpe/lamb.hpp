#pragma once

// Relative modification of the Lamb shift between plates, and its
// specialization to spherical quantum dots in the strong-confinement regime.
//
// Lengths in nm, energies in nm^-1 (hbar = c = 1).

#include "zpe/emsum.hpp"
#include "zpe/quad.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zpe::lamb {

/// Reduced Compton wavelength of the electron, nm.
inline constexpr double kElectronComptonNm = 3.8615926796e-4;
/// hbar c in eV nm, for reporting energies.
inline constexpr double kHbarCEvNm = 197.3269804;

/// IR scale kappa_d = pi/d, Bethe cutoff kappa_star, UV cutoff m_star.
class LambContext {
 public:
  /// Throws RegimeViolation unless kappa_star > kappa_d and m_star > kappa_star;
  /// DomainError for non-positive inputs.
  LambContext(double kappa_d, double kappa_star, double m_star);

  double kappa_d() const noexcept { return kappa_d_; }
  double kappa_star() const noexcept { return kappa_star_; }
  double m_star() const noexcept { return m_star_; }
  /// kappa_star / kappa_d > 1.
  double eta_star() const noexcept { return kappa_star_ / kappa_d_; }
  /// ln(m_star / kappa_star) > 0.
  double log_factor() const noexcept;
  /// The non-relativistic ordering is marginal: m_star / kappa_star < 10.
  bool mass_warning() const noexcept { return m_star_ / kappa_star_ < 10.0; }

  /// Builds the context from eta_star and ln(m_star/kappa_star) with kappa_d = 1.
  static LambContext from_ratios(double eta_star, double log_factor);

 private:
  double kappa_d_;
  double kappa_star_;
  double m_star_;
};

struct RelativeShift {
  double value = 0.0;
  /// Terms already divided by the log factor.
  emsum::AsymptoticSeries series;
  double remainder_bound = 0.0;
};

/// b_{2n} / (2n (2n-1) eta^(2n)) * bethe_inner_sum(n).
double bethe_term(int n, double eta_star);
/// |b_{2n}| / (2n (2n-1) eta^(2n)).
double welton_term(int n, double eta_star);

/// Largest order available from the Bernoulli table.
inline constexpr int kMaxOrder = 60;

/// Sum of bethe_term over n = 1..r divided by the log factor. order unset
/// selects optimal truncation.
RelativeShift bethe_relative_shift(const LambContext& ctx, std::optional<int> order = std::nullopt);
RelativeShift welton_relative_shift(const LambContext& ctx, std::optional<int> order = std::nullopt);

/// (1/12) (kappa_d/kappa_star)^2 / ln(m_star/kappa_star) >= 0.
double leading_relative_shift(const LambContext& ctx);

/// Quadrature counterparts: (1/(pi ln(m*/kappa*))) int_0^inf g(s) T(s) ds with
/// T = 1/((s+eta) sqrt(s^2+eta^2)) for Bethe and T = 1/(s^2+eta^2) for Welton,
/// the regulator removed by extrapolation.
quad::QuadResult bethe_relative_shift_quadrature(const LambContext& ctx);
quad::QuadResult welton_relative_shift_quadrature(const LambContext& ctx);

struct Material {
  std::string name;
  double electron_mass_ratio = 0.0;
  double hole_mass_ratio = 0.0;

  /// m_e m_h / (m_e + m_h).
  double reduced_mass_ratio() const noexcept;
  /// Throws DomainError unless both mass ratios lie in (0, 10).
  void validate() const;
};

/// "InAs" (heavy hole 0.41) and "InAs:lh" (light hole 0.026); electron 0.026 in both.
Material builtin_material(std::string_view name);
std::vector<std::string> builtin_material_names();

enum class Carrier { electron, hole, exciton };
std::string_view to_string(Carrier carrier);
/// Accepts "electron", "hole", "exciton".
Carrier parse_carrier(std::string_view name);

/// Effective mass ratio of the carrier; the exciton uses the reduced mass.
double carrier_mass_ratio(const Material& material, Carrier carrier);

struct QdCutoffs {
  /// 7 pi^2 / (12 m_star R^2), nm^-1.
  double kappa_star = 0.0;
  /// (pi/2) sqrt(7/3) lambda_star, nm.
  double R_star = 0.0;
  /// 1 / m_star, nm.
  double lambda_star = 0.0;
  /// Carrier mass, nm^-1.
  double m_star = 0.0;
};

QdCutoffs qd_cutoffs(const Material& material, Carrier carrier, double R);

/// (1/2) sqrt(7/3): R^2 / (R_star d) must stay below this.
double validity_limit();

struct QDotSystem {
  Material material;
  double radius = 0.0;
  double separation = 0.0;
  Carrier carrier = Carrier::electron;

  QdCutoffs cutoffs() const;
  /// R^2 / (R_star d).
  double validity_ratio() const;
  /// R > R_star and validity_ratio < validity_limit.
  bool valid() const;
  /// kappa_star / kappa_d.
  double eta_star() const;
};

enum class QdRoute { direct, via_leading };

/// direct: (1/14) (R^2/(R_star d))^2 / ln(R/R_star).
/// via_leading: leading_relative_shift with kappa_d = pi/d and the dot cutoffs.
/// Throws RegimeViolation when R <= R_star or validity_ratio >= validity_limit.
double qd_relative_shift(const QDotSystem& system, QdRoute route);

struct SweepRow {
  double R = 0.0;
  double d = 0.0;
  Carrier carrier = Carrier::electron;
  double eta_star = 0.0;
  double validity_ratio = 0.0;
  bool valid = false;
  /// NaN when !valid.
  double shift_leading = 0.0;
  /// Bethe series to r = 2; NaN when !valid.
  double shift_order2 = 0.0;
};

SweepRow sweep_point(const Material& material, Carrier carrier, double R, double d);
std::vector<SweepRow> sweep_radius(const Material& material, Carrier carrier, double d,
                                   const std::vector<double>& R_grid);
std::vector<SweepRow> sweep_distance(const Material& material, Carrier carrier, double R,
                                     const std::vector<double>& d_grid);

}  // namespace zpe::lamb
