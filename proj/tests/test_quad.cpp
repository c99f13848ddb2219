#include "zpe/errors.hpp"
#include "zpe/quad.hpp"
#include "zpe/regseries.hpp"
#include "zpe/special.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

namespace quad = zpe::quad;

namespace {

const double kSqrtPiHalf = 0.5 * std::sqrt(std::numbers::pi);

long double gaussian(long double t) { return std::exp(-t * t); }
long double lorentzian(long double t) { return 1.0L / (1.0L + t * t); }

}  // namespace

TEST_CASE("QuadSpec validation") {
  quad::QuadSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.max_panels = 63;
  CHECK_THROWS_AS(spec.validate(), zpe::DomainError);
  spec = {};
  spec.relative_tolerance = 0.0;
  CHECK_THROWS_AS(spec.validate(), zpe::DomainError);
  spec = {};
  spec.absolute_tolerance = -1.0;
  CHECK_THROWS_AS(quad::integrate_semiinfinite(gaussian, false, spec), zpe::DomainError);
}

TEST_CASE("semi-infinite Gaussian in both modes") {
  const auto blind = quad::integrate_semiinfinite(gaussian, false);
  const auto panels = quad::integrate_semiinfinite(gaussian, true);
  CHECK(std::abs(blind.value - kSqrtPiHalf) <= 1e-12);
  CHECK(std::abs(panels.value - kSqrtPiHalf) <= 1e-12);
  CHECK(panels.panels_used < 12);
  CHECK(blind.within_tolerance);
}

TEST_CASE("algebraic tail through the mapped rule") {
  const auto r = quad::integrate_semiinfinite(lorentzian, false);
  CHECK(std::abs(r.value - 0.5 * std::numbers::pi) <= 1e-10);
  CHECK(r.error_estimate <= 1e-12 * std::abs(r.value) + 1e-15);
}

TEST_CASE("sawtooth times a wide Gaussian matches its Bernoulli prediction") {
  // int g(s) F(s) ds ~ pi [b2/2! F(0) + b4/4! F''(0) + ...] for F(s) = exp(-(s/100)^2),
  // where F''(0) = -2e-4; the next term is O(1e-12).
  auto f = [](long double s) {
    return zpe::regseries::g_closed(static_cast<double>(s)) * std::exp(-(s / 100.0L) * (s / 100.0L));
  };
  const double b2 = zpe::special::bernoulli_value(2);
  const double b4 = zpe::special::bernoulli_value(4);
  const double prediction = std::numbers::pi * (b2 / 2.0 + b4 / 24.0 * (-2e-4));
  const auto r = quad::integrate_semiinfinite(f, true);
  CHECK(std::abs(r.value - prediction) <= 1e-8);
}

TEST_CASE("panel integrand receives cell and offset") {
  bool consistent = true;
  auto f = [&](const quad::PanelPoint& p) -> long double {
    consistent = consistent && p.offset > 0.0L && p.offset < 1.0L &&
                 p.s == static_cast<long double>(p.cell) + p.offset;
    return std::exp(-p.s);
  };
  const auto r = quad::integrate_panels(f, [](long double s) { return std::exp(-s); });
  CHECK(consistent);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r.panels_used == 37);  // exp(-37) < 1e-16 <= exp(-36)
}

TEST_CASE("panel budget exhaustion carries the partial value") {
  quad::QuadSpec spec;
  spec.max_panels = 64;
  auto f = [](const quad::PanelPoint&) -> long double { return 1.0L; };
  try {
    quad::integrate_panels(f, [](long double) { return 1.0L; }, spec);
    FAIL("expected NonConvergence");
  } catch (const zpe::NonConvergence& e) {
    CHECK(e.partial_value() == doctest::Approx(64.0));
  }
}

TEST_CASE("finite interval adaptive rule") {
  const auto r = quad::integrate_interval([](long double x) { return std::sqrt(x); }, 0.0L, 1.0L);
  CHECK(std::abs(r.value - 2.0 / 3.0) <= 1e-12);
  const auto kink = quad::integrate_interval([](long double x) { return std::fabs(x - 0.3L); }, 0.0L, 1.0L);
  CHECK(std::abs(kink.value - (0.045 + 0.245)) <= 1e-12);
}

TEST_CASE("panel splitting agrees with the blind run on smooth integrands") {
  auto damped_cos = [](long double t) { return std::exp(-t) * std::cos(t); };
  auto moment = [](long double t) { return t * t * std::exp(-t); };
  for (auto f : {quad::RealFunction(gaussian), quad::RealFunction(damped_cos), quad::RealFunction(moment)}) {
    const auto a = quad::integrate_semiinfinite(f, true);
    const auto b = quad::integrate_semiinfinite(f, false);
    const quad::QuadSpec spec;
    CHECK(std::abs(a.value - b.value) <= 2.0 * (spec.relative_tolerance * std::abs(b.value) + spec.absolute_tolerance));
  }
}

TEST_CASE("tightening the relative tolerance never increases the error") {
  struct Case {
    quad::RealFunction f;
    bool panels;
    double exact;
  };
  const Case cases[] = {
      {gaussian, true, kSqrtPiHalf},
      {gaussian, false, kSqrtPiHalf},
      {lorentzian, false, 0.5 * std::numbers::pi},
  };
  for (const auto& c : cases) {
    double previous = INFINITY;
    for (double rtol = 1e-4; rtol >= 1e-13; rtol *= 0.5) {
      quad::QuadSpec spec;
      spec.relative_tolerance = rtol;
      const double e = std::abs(quad::integrate_semiinfinite(c.f, c.panels, spec).value - c.exact);
      CHECK(e <= previous + 4e-16);
      previous = e;
    }
  }
}
