#include <catch_amalgamated.hpp>

#include "koppel/quad.hpp"

using namespace koppel;

TEST_CASE("area of the unit disc") {
  QuadResult q = integrate(QuadDomain::Disc(Cpx{}, 1.0),
                           [](Cpx) { return Cpx{1, 0}; }, 1e-12);
  REQUIRE(std::abs(q.value - Cpx{kPi, 0}) < 1e-10);
}

TEST_CASE("circle integral of dtau/tau") {
  QuadResult q = integrate_circle(Cpx{}, 1.0, [](Cpx t) { return Cpx{1, 0} / t; }, 1e-13);
  REQUIRE(std::abs(q.value - kTwoPiI) < 1e-12);
}

TEST_CASE("radially singular integrable weight against the closed form") {
  // integral over the unit disc of |z|^{-1/2} dA = 2 pi * (2/3) = 4 pi / 3
  QuadDomain d = QuadDomain::Disc(Cpx{}, 1.0);
  d.puncture = Cpx{};
  QuadResult q = integrate(
      d, [](Cpx z) { return Cpx{1.0 / std::sqrt(std::abs(z)), 0}; }, 1e-10);
  REQUIRE(std::abs(q.value - Cpx{4.0 * kPi / 3.0, 0}) < 1e-8);
}

TEST_CASE("off-center puncture: Cauchy-type kernel over the disc") {
  // integral over the unit disc of 1/(z - a) dA = -pi * conj(a) for |a| < 1
  Cpx a{0.3, 0.2};
  QuadDomain d = QuadDomain::Disc(Cpx{}, 1.0);
  d.puncture = a;
  QuadResult q = integrate(d, [a](Cpx z) { return Cpx{1, 0} / (z - a); }, 1e-10);
  REQUIRE(std::abs(q.value + kPi * std::conj(a)) < 1e-8);
}

TEST_CASE("annulus with breakpoints integrates a kinked radial profile") {
  // f = max(0, |z| - 1)^2, kink on |z| = 1; exact integral over 0.5 <= |z| <= 2:
  // 2 pi * int_1^2 (r-1)^2 r dr = 2 pi * (1/3 + ... ) ; compute: int (r-1)^2 r dr,
  // substitute u = r-1: int_0^1 u^2 (u+1) du = 1/4 + 1/3 = 7/12
  QuadDomain d = QuadDomain::Annulus(Cpx{}, 0.5, 2.0);
  d.radial_breaks = {1.0};
  QuadResult q = integrate(d,
                           [](Cpx z) {
                             double u = std::max(0.0, std::abs(z) - 1.0);
                             return Cpx{u * u, 0};
                           },
                           1e-12);
  REQUIRE(std::abs(q.value - Cpx{2.0 * kPi * 7.0 / 12.0, 0}) < 1e-9);
}

TEST_CASE("linearity to tolerance") {
  auto f = [](Cpx z) { return z * std::conj(z) + Cpx{1, 0}; };
  auto g = [](Cpx z) { return std::conj(z) * Cpx{0, 2}; };
  QuadDomain d = QuadDomain::Disc(Cpx{0.1, 0.1}, 1.3);
  Cpx lhs = integrate(d, [&](Cpx z) { return f(z) + Cpx{2, 1} * g(z); }, 1e-12).value;
  Cpx rhs = integrate(d, f, 1e-12).value + Cpx{2, 1} * integrate(d, g, 1e-12).value;
  REQUIRE(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("circle rule is exact on trigonometric polynomials") {
  // f(theta) = e^{5 i theta} on |tau| = 1: integral of f dtau = 0 exactly for
  // the trapezoid rule once the node count exceeds the degree
  QuadOptions opts;
  opts.theta_init = 16;
  QuadResult q = integrate_circle(
      Cpx{}, 1.0,
      [](Cpx t) {
        Cpx t2 = t * t;
        return t2 * t2 * t;
      },
      1e-13, opts);
  REQUIRE(std::abs(q.value) < 1e-13);
}

TEST_CASE("refinement monotonicity: larger budget never hurts") {
  auto f = [](Cpx z) { return std::exp(z.real()) * Cpx{1.0, z.imag()}; };
  QuadDomain d = QuadDomain::Disc(Cpx{}, 1.0);
  QuadOptions small;
  small.theta_init = 8;
  small.theta_max = 16;
  QuadOptions big;
  big.theta_init = 8;
  big.theta_max = 512;
  double err_small, err_big;
  try {
    err_small = integrate(d, f, 1e-30, small).err_estimate;
  } catch (const AccuracyError& e) {
    err_small = e.err_estimate;
  }
  try {
    err_big = integrate(d, f, 1e-30, big).err_estimate;
  } catch (const AccuracyError& e) {
    err_big = e.err_estimate;
  }
  REQUIRE(err_big <= err_small);
}

TEST_CASE("budget exhaustion raises an accuracy error with a partial result") {
  QuadOptions tiny;
  tiny.theta_init = 8;
  tiny.theta_max = 8;
  tiny.gl_points = 2;
  tiny.base_panels = 1;
  bool threw = false;
  try {
    integrate(QuadDomain::Disc(Cpx{}, 1.0),
              [](Cpx z) { return std::exp(3.0 * z.real()) * Cpx{1, 0}; }, 1e-14, tiny);
  } catch (const AccuracyError& e) {
    threw = true;
    REQUIRE(std::abs(e.partial) > 0);
    REQUIRE(e.err_estimate > 1e-14);
  }
  REQUIRE(threw);
}

TEST_CASE("ball2 volume") {
  // vol(|z| <= R in C^2) = pi^2 R^4 / 2
  QuadDomain d = QuadDomain::Ball2({Cpx{}, Cpx{}}, 1.0);
  QuadOptions outer;
  outer.gl_points = 8;
  outer.theta_init = 8;
  QuadOptions inner;
  inner.gl_points = 8;
  inner.theta_init = 8;
  QuadResult q = integrate_ball2(d, [](Cpx, Cpx) { return Cpx{1, 0}; }, 1e-8, outer, inner);
  REQUIRE(std::abs(q.value - Cpx{kPi * kPi / 2.0, 0}) < 1e-6);
}

TEST_CASE("pv_integrate: removable cutoff reproduces the plain integral") {
  auto f = [](Cpx z) { return std::conj(z) + Cpx{2, 0}; };
  QuadDomain d = QuadDomain::Disc(Cpx{}, 1.0);
  // excised mass scales like delta^2, so second-order extrapolation removes it
  PVSchedule sched = PVSchedule::dyadic(3, 10, PVSchedule::Extrap::richardson, 2.0);
  StepProfile cut{1.0, 2.0};
  PVResult pv = pv_integrate(d, f, cut, sched, 1e-10);
  Cpx plain = integrate(d, f, 1e-12).value;
  REQUIRE(std::abs(pv.quad.value - plain) < 1e-8);
}

TEST_CASE("pv_integrate: integrable singularity agrees with refined quadrature") {
  auto f = [](Cpx z) { return Cpx{1.0 / std::abs(z), 0}; };
  QuadDomain d = QuadDomain::Disc(Cpx{}, 1.0);
  PVSchedule sched = PVSchedule::dyadic(3, 14, PVSchedule::Extrap::richardson, 1.0);
  StepProfile cut{1.0, 2.0};
  PVResult pv = pv_integrate(d, f, cut, sched, 1e-10);
  QuadDomain dp = d;
  dp.puncture = Cpx{};
  Cpx direct = integrate(dp, f, 1e-10).value;  // exact: 2 pi
  REQUIRE(std::abs(pv.quad.value - direct) < 2e-6);
}

TEST_CASE("cusp moment integrand is radius independent on circles") {
  // f = tau^3 * (2 pi i / tau^2): contour integral = 2 pi i * 0; with
  // f = tau * (1/tau^2) it is 2 pi i; spread across radii below 1e-10
  auto f = [](Cpx t) { return t / (t * t); };
  Cpx v1 = integrate_circle(Cpx{}, 0.25, f, 1e-13).value;
  Cpx v2 = integrate_circle(Cpx{}, 0.75, f, 1e-13).value;
  REQUIRE(std::abs(v1 - v2) < 1e-10);
  REQUIRE(std::abs(v1 - kTwoPiI) < 1e-11);
}

TEST_CASE("sep_regularize flags a diverging family") {
  PVSchedule sched = PVSchedule::dyadic(3, 10);
  std::vector<Cpx> fam;
  for (double d : sched.deltas) fam.push_back(Cpx{1.0 / d, 0});
  REQUIRE_THROWS_AS(sep_regularize(fam, sched), DivergenceError);
}

TEST_CASE("sep_regularize commutes with scalar multiplication") {
  PVSchedule sched = PVSchedule::dyadic(3, 10, PVSchedule::Extrap::richardson, 1.0);
  std::vector<Cpx> fam;
  for (double d : sched.deltas) fam.push_back(Cpx{3.0 + d, -d});
  Cpx s{2, -1};
  std::vector<Cpx> scaled;
  for (Cpx v : fam) scaled.push_back(s * v);
  Cpx a = sep_regularize(scaled, sched).value;
  Cpx b = s * sep_regularize(fam, sched).value;
  REQUIRE(std::abs(a - b) < 1e-13);
}
