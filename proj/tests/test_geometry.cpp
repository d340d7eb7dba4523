#include <catch_amalgamated.hpp>

#include "koppel/geometry.hpp"

using namespace koppel;

TEST_CASE("gamma for the hyperplane h = zeta_2") {
  Hypersurface X = Hypersurface::from_poly(Poly::zeta(2));
  auto g = gamma_coeffs(X, pt(Cpx{0.3, 0.1}, Cpx{}));
  REQUIRE(g[0] == Cpx{});
  REQUIRE(std::abs(g[1] + kTwoPiI) < 1e-15);
  // omega = -gamma . (dzeta_1 ^ dzeta_2) = -2 pi i dzeta_1 in this orientation
  FormField om = omega_ambient_field(X);
  ExtForm v = om(pt(Cpx{0.3, 0.1}, Cpx{}), Pt{});
  REQUIRE(std::abs(v.coeff(blade_make(1, 0)) + kTwoPiI) < 1e-14);
}

TEST_CASE("gamma for the cusp at (1,1)") {
  MonomialCurve c = MonomialCurve::make(2, 3);
  Hypersurface X = c.ambient();
  auto g = gamma_coeffs(X, pt(Cpx{1, 0}, Cpx{1, 0}));
  // dh = (2 zeta_1, -3 zeta_2^2) = (2, -3); |dh|^2 = 13
  REQUIRE(std::abs(g[0] - (-kTwoPiI) * (2.0 / 13.0)) < 1e-14);
  REQUIRE(std::abs(g[1] - (-kTwoPiI) * (-3.0 / 13.0)) < 1e-14);
}

TEST_CASE("gamma blows up at the rate 1/|dh| toward the cusp point") {
  MonomialCurve c = MonomialCurve::make(2, 3);
  Hypersurface X = c.ambient();
  double prev = 0;
  for (int j = 1; j <= 6; ++j) {
    Cpx tau{0.5 * std::ldexp(1.0, -j), 0};
    Pt zeta = c.point(tau);
    auto g = gamma_coeffs(X, zeta);
    double mag = std::sqrt(std::norm(g[0]) + std::norm(g[1]));
    Cpx d1 = X.grad[0].eval(zeta), d2 = X.grad[1].eval(zeta);
    double dh = std::sqrt(std::norm(d1) + std::norm(d2));
    REQUIRE(std::abs(mag * dh - 2.0 * kPi) < 1e-10);  // |gamma| = 2 pi / |dh| exactly
    REQUIRE(mag > prev);
    prev = mag;
  }
  REQUIRE_THROWS_AS(gamma_coeffs(X, pt(Cpx{}, Cpx{})), SingularityError);
}

TEST_CASE("cusp structure form densities") {
  StructureForm f23 = cusp_structure_form(MonomialCurve::make(2, 3));
  REQUIRE(f23.pole_order == 2);
  REQUIRE(f23.density.coeff(-2) == kTwoPiI);
  StructureForm f25 = cusp_structure_form(MonomialCurve::make(2, 5));
  REQUIRE(f25.pole_order == 4);
  REQUIRE(f25.density.coeff(-4) == kTwoPiI);
  StructureForm plane = StructureForm::hyperplane();
  REQUIRE(plane.pole_order == 0);
  REQUIRE(plane.density.coeff(0) == -kTwoPiI);
}

TEST_CASE("ambient gamma pullback matches the symbolic density") {
  for (auto [r, s] : {std::pair{2, 3}, {3, 4}}) {
    MonomialCurve c = MonomialCurve::make(r, s);
    for (double radius : {0.25, 0.5, 0.9}) {
      GammaCheckReport rep = pullback_gamma_check(c, radius, 1e-8);
      INFO("r=" << r << " s=" << s << " radius=" << radius);
      REQUIRE(rep.pass);
      REQUIRE(rep.max_rel_dev < 1e-10);
    }
  }
}

TEST_CASE("omega blow-up exponent fits the conductor") {
  MonomialCurve c = MonomialCurve::make(2, 3);
  double fit = omega_blowup_exponent(c, {0.5, 0.25, 0.125, 0.0625});
  REQUIRE(std::abs(fit - c.conductor()) < 0.05);
  MonomialCurve c35 = MonomialCurve::make(3, 5);
  double fit35 = omega_blowup_exponent(c35, {0.5, 0.25, 0.125, 0.0625});
  REQUIRE(std::abs(fit35 - c35.conductor()) < 0.05);
}

TEST_CASE("dbar omega = 0: circle pairings are radius independent") {
  MonomialCurve c = MonomialCurve::make(2, 3);
  StructureForm w = StructureForm::cusp(c);
  // holomorphic xi = tau against omega: contour values on two radii agree
  auto pairing = [&](double eps) {
    auto f = [&](Cpx tau) {
      return LaurentPoly::monomial(1).eval(tau) * w.density.eval(tau);
    };
    return integrate_circle(Cpx{}, eps, f, 1e-13).value;
  };
  REQUIRE(std::abs(pairing(0.3) - pairing(0.7)) < 1e-10);
  REQUIRE(std::abs(pairing(0.5) - kTwoPiI * kTwoPiI) < 1e-10);
}

TEST_CASE("one-variable Lelong pairing recovers the point value") {
  BumpProfile b{0.25, 0.64};
  PVSchedule sched = PVSchedule::dyadic(3, 12, PVSchedule::Extrap::richardson, 2.0);
  auto xi = [b](Cpx z) { return b(std::norm(z)) * (Cpx{1, 0} + z + std::conj(z)); };
  SepResult r = lelong_point_mass(xi, sched);
  REQUIRE(std::abs(r.value - Cpx{1, 0}) < 1e-10);
}

TEST_CASE("Lelong pairing is linear in the test form") {
  PVSchedule sched = PVSchedule::dyadic(3, 10, PVSchedule::Extrap::richardson, 2.0);
  BumpProfile b{0.25, 0.64};
  auto xi1 = [b](Cpx z) { return Cpx{b(std::norm(z)), 0}; };
  auto xi2 = [b](Cpx z) { return b(std::norm(z)) * (z * std::conj(z)); };
  Cpx lhs = lelong_point_mass(
                [&](Cpx z) { return xi1(z) + Cpx{2, 1} * xi2(z); }, sched)
                .value;
  Cpx rhs = lelong_point_mass(xi1, sched).value +
            Cpx{2, 1} * lelong_point_mass(xi2, sched).value;
  REQUIRE(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("graph-plane Lelong pairing is planar quadrature") {
  BumpProfile b{0.25, 0.64};
  // xi = bump(|z1|^2) dzeta_1 ^ dzetabar_1; the pairing equals the integral
  // of -2i * bump over the plane = -2i * pi * int_0^inf b(t) dt
  FormField xi{2, [b](const Pt& zeta, const Pt&) {
                 ExtForm f(2);
                 f.set(blade_make(1, 1), Cpx{b(std::norm(zeta[0])), 0});
                 return f;
               }};
  QuadResult q = lelong_graph_plane(xi, 1.0, 1e-10, {0.5, 0.8});
  // int b dA = pi * int_0^inf b(t) dt with t = r^2; b: 1 on [0, .25], quintic to .64
  // int_0^inf b(t) dt = 0.25 + 0.39/2 = 0.445 (smoothstep integrates to half)
  Cpx expect = Cpx{0, -2} * kPi * 0.445;
  REQUIRE(std::abs(q.value - expect) < 1e-8);
}

TEST_CASE("curve Lelong pairing: tau route vs graph route") {
  MonomialCurve c = MonomialCurve::make(2, 3);
  BumpProfile b{0.04, 0.25};
  // ambient test form bump(|zeta_2|^2) dzeta_2 ^ dzetabar_2
  FormField xi{2, [b](const Pt& zeta, const Pt&) {
                 ExtForm f(2);
                 f.set(blade_make(2, 2), Cpx{b(std::norm(zeta[1])), 0});
                 return f;
               }};
  PVSchedule sched = PVSchedule::dyadic(4, 11, PVSchedule::Extrap::richardson, 1.0);
  Cpx via_tau = lelong_curve(c, xi, CurveRoute::tau, sched, 0.85, 1e-9);
  Cpx via_graph = lelong_curve(c, xi, CurveRoute::graph, sched, 0.85, 1e-9);
  REQUIRE(std::abs(via_tau - via_graph) < 1e-3);
}

TEST_CASE("sep_regularize: constant family returns the constant") {
  PVSchedule sched = PVSchedule::dyadic(3, 10);
  std::vector<Cpx> fam(sched.deltas.size(), Cpx{3.25, -1.5});
  SepResult r = sep_regularize(fam, sched);
  REQUIRE(r.value == Cpx{3.25, -1.5});
  REQUIRE(r.err_estimate == 0.0);
}

TEST_CASE("sep_regularize: linear family with first-order extrapolation") {
  PVSchedule sched = PVSchedule::dyadic(3, 12, PVSchedule::Extrap::richardson, 1.0);
  std::vector<Cpx> fam;
  for (double d : sched.deltas) fam.push_back(Cpx{1.0 + 2.0 * d, 0.5 - d});
  SepResult r = sep_regularize(fam, sched);
  REQUIRE(std::abs(r.value - Cpx{1.0, 0.5}) < 1e-13);
}

TEST_CASE("sep_regularize: cusp-type sqrt tail settles within 1e-4 on 10 levels") {
  PVSchedule sched = PVSchedule::dyadic(3, 12, PVSchedule::Extrap::richardson, 0.5);
  std::vector<Cpx> fam;
  for (double d : sched.deltas) fam.push_back(Cpx{2.0 + std::sqrt(d), 0});
  SepResult r = sep_regularize(fam, sched);
  REQUIRE(std::abs(r.value - Cpx{2.0, 0}) < 1e-4);
  REQUIRE(std::abs(r.fitted_order - 0.5) < 0.05);
}

TEST_CASE("fit_line recovers a known slope") {
  std::vector<double> x{1, 2, 3, 4}, y{2.5, 4.5, 6.5, 8.5};
  LineFit f = fit_line(x, y);
  REQUIRE(std::abs(f.slope - 2.0) < 1e-12);
  REQUIRE(std::abs(f.intercept - 0.5) < 1e-12);
}
