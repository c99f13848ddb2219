#pragma once

// Plate-induced corrections to zero-point sums: cutoff profiles, densities of
// states, the functional H[F] = V kd^(gamma+2)/pi^3 * int g(s) F(s) phi ds by
// quadrature and by its Bernoulli expansion, and the Casimir energy.
//
// Natural units: lengths in nm, energies in nm^-1.

#include "zpe/emsum.hpp"
#include "zpe/quad.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace zpe::casimir {

enum class ProfileFamily { gaussian, quartic, sech };

std::string_view to_string(ProfileFamily family);
/// Accepts "gaussian", "quartic", "sech"; throws DomainError otherwise.
ProfileFamily parse_profile(std::string_view name);

/// Regulator phi(k / kappa_phi) with phi(0) = 1 and faster than polynomial decay.
class CutoffProfile {
 public:
  CutoffProfile(ProfileFamily family, double kappa_phi);

  ProfileFamily family() const noexcept { return family_; }
  double kappa_phi() const noexcept { return kappa_phi_; }

  /// phi(x) for the dimensionless argument x = k / kappa_phi.
  long double shape(long double x) const;

 private:
  ProfileFamily family_;
  double kappa_phi_;
};

class PlateGeometry {
 public:
  /// Throws DomainError unless L > 0 and d > 0.
  PlateGeometry(double plate_size_L, double separation_d);

  double plate_size() const noexcept { return L_; }
  double separation() const noexcept { return d_; }
  /// pi / d.
  double kappa_d() const noexcept;
  /// L^2 d.
  double volume() const noexcept { return L_ * L_ * d_; }
  /// The plates are meant to be much wider than their gap; set when d/L > 0.1.
  bool aspect_warning() const noexcept { return d_ / L_ > 0.1; }

 private:
  double L_;
  double d_;
};

/// F(kd s) = A / (kd^beta (s + xi)^beta) * (s^2 + eta^2)^(gamma/2).
struct SpectralWeight {
  double amplitude = 1.0;
  double beta = 0.0;
  int gamma = 0;
  double xi = 0.0;
  double eta = 0.0;

  /// Throws DomainError when: beta < 0; eta < 0; gamma <= -1 with eta = 0;
  /// beta > 0 with xi <= 0; beta > 0 with xi < eta.
  void validate() const;
};

/// k^2 / pi^2.
double rho_free(double k);
/// (kd k / pi^3) g(k / kd); |rho_correction / rho_free| <= kd / (2k).
double rho_correction(double k, double kappa_d);

/// V kd^(gamma+2-beta) A / pi^3: the factor in front of the s-integral.
double quadrature_prefactor(const SpectralWeight& w, const PlateGeometry& geom);

/// int_0^inf g(s) (s+xi)^-beta (s^2+eta^2)^(gamma/2) phi(kd sqrt(s^2+eta^2)/kappa_phi) ds,
/// integrated cell by cell. The returned value and error are already scaled
/// by quadrature_prefactor.
quad::QuadResult h_casimir_quadrature(const SpectralWeight& w, const PlateGeometry& geom,
                                      const CutoffProfile& profile, const quad::QuadSpec& spec = {});

/// Options for removing the regulator: the quadrature is repeated at
/// kd/kappa_phi = start_ratio / 2^k, k = 0..levels-1, and extrapolated in
/// (kd/kappa_phi)^2.
struct LimitOptions {
  ProfileFamily family = ProfileFamily::gaussian;
  /// 0 selects 0.05 / max(eta, 1).
  double start_ratio = 0.0;
  int levels = 6;
  quad::QuadSpec spec{};
};

/// int_0^inf g(s) (s+xi)^-beta (s^2+eta^2)^(gamma/2) ds: the regulated
/// integral extrapolated to kd/kappa_phi -> 0, without any prefactor.
quad::QuadResult weight_integral_limit(const SpectralWeight& w, const LimitOptions& options = {});

/// h_casimir_quadrature in the limit kd/kappa_phi -> 0. error_estimate is the
/// spread of the last two extrapolants plus the last quadrature error.
quad::QuadResult h_casimir_quadrature_limit(const SpectralWeight& w, const PlateGeometry& geom,
                                            const LimitOptions& options = {});

/// Largest expansion order available from the Bernoulli table.
inline constexpr int kMaxExpansionOrder = 60;

struct ExpansionResult {
  double value = 0.0;
  /// Terms in units of expansion_prefactor.
  emsum::AsymptoticSeries series;
  double prefactor = 0.0;
  /// prefactor * series.remainder_bound.
  double remainder_bound = 0.0;
};

/// V kd^(gamma+2-beta) A / pi^2.
double expansion_prefactor(const SpectralWeight& w, const PlateGeometry& geom);

/// Taylor coefficients c_0..c_{count-1} at s = 0 of (s+xi)^-beta (s^2+eta^2)^(gamma/2).
std::vector<double> weight_taylor_coefficients(const SpectralWeight& w, int count);

/// prefactor * sum_{n=1}^{r} b_{2n} / (2n (2n-1)) c_{2n-2}.
/// order unset: for gamma >= 0 with beta = 0 and eta = 0 the series is a
/// polynomial and is summed to its last nonzero term; otherwise the first
/// max(1, floor(gamma/2)+2) terms are kept and the rest is truncated optimally.
ExpansionResult h_casimir_expansion(const SpectralWeight& w, const PlateGeometry& geom,
                                    std::optional<int> order = std::nullopt);

enum class EnergyRoute { quadrature, expansion, closed_form };

std::string_view to_string(EnergyRoute route);

/// Plate term of the regularized zero-point energy.
/// closed_form: -pi^2 L^2 / (720 d^3). The other routes use the weight
/// A = 1/2, beta = 0, gamma = 2, eta = 0. The expansion ignores the profile.
double casimir_energy(const PlateGeometry& geom, const CutoffProfile& profile, EnergyRoute route,
                      const quad::QuadSpec& spec = {});

/// int_0^inf k^3/(2 pi^2) phi(k/kappa_phi) dk.
double bulk_energy_density(const CutoffProfile& profile);

}  // namespace zpe::casimir
