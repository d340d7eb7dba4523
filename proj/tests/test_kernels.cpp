#include <catch_amalgamated.hpp>

#include "koppel/geometry.hpp"
#include "koppel/kernels.hpp"
#include "test_util.hpp"

using namespace koppel;

namespace {
std::vector<Cpx> points_in_disc(int n, double radius, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Cpx> out;
  while (static_cast<int>(out.size()) < n) {
    double x = u(rng), y = u(rng);
    if (x * x + y * y <= 1.0) out.push_back(radius * Cpx{x, y});
  }
  return out;
}
}  // namespace

TEST_CASE("admissible form: direct formula in one variable") {
  AdmissibleForm s = bm_admissible(1);
  ExtForm v = s.s(pt(Cpx{1, 0}), pt(Cpx{}));
  REQUIRE(v.coeff(blade_make(1, 0)) == Cpx{1, 0});
}

TEST_CASE("admissible form: |s| = |eta| and delta_eta s = 2 pi i |eta|^2") {
  AdmissibleForm s = bm_admissible(2);
  Pt zeta = pt(Cpx{1, 0}, Cpx{0, 1});
  Pt z = pt(Cpx{}, Cpx{});
  ExtForm sv = s.s(zeta, z);
  REQUIRE(std::abs(sv.norm2() - std::sqrt(norm2(zeta - z, 2))) < 1e-14);
  Pt eta = zeta - z;
  ExtForm c = contract_eta({eta[0], eta[1], eta[2]}, sv);
  REQUIRE(std::abs(c.coeff(0) - kTwoPiI * 2.0) < 1e-14);
}

TEST_CASE("B_{1,0} is the Cauchy kernel in one variable") {
  BForm B = bm_components(bm_admissible(1));
  ExtForm b = B.component(1, pt(Cpx{2, 0}), pt(Cpx{}));
  // dzeta / (2 pi i (zeta - z)) at zeta = 2, z = 0
  REQUIRE(std::abs(b.coeff(blade_make(1, 0)) - Cpx{1, 0} / (kTwoPiI * 2.0)) < 1e-15);
}

TEST_CASE("B_{2,1} against the hand expansion at zeta=(1,0), z=0") {
  BForm B = bm_components(bm_admissible(2));
  ExtForm b = B.component(2, pt(Cpx{1, 0}, Cpx{}), pt(Cpx{}, Cpx{}));
  // s = conj(zeta_1) d_eta1, dbar s = sum_j d_zetabar_j ^ d_eta_j, |eta| = 1:
  // s ^ dbar s = d_eta1 ^ (d_zetabar2 ^ d_eta2) = -(d_eta1 ^ d_eta2 ^ d_zetabar2)
  Cpx expect = Cpx{-1, 0} / (kTwoPiI * kTwoPiI);
  REQUIRE(std::abs(b.coeff(blade_make(3, 2)) - expect) < 1e-15);
  REQUIRE(b.bidegree_part(2, 1).max_abs() == b.max_abs());
}

TEST_CASE("B components scale with homogeneity 1-2k") {
  BForm B = bm_components(bm_admissible(2));
  Pt zeta = pt(Cpx{0.7, 0.2}, Cpx{-0.3, 0.4});
  Pt z = pt(Cpx{0.1, 0}, Cpx{0.2, -0.1});
  double lambda = 2.0;
  Pt zl = pt(lambda * zeta[0], lambda * zeta[1]);
  Pt zzl = pt(lambda * z[0], lambda * z[1]);
  for (int k = 1; k <= 2; ++k) {
    ExtForm base = B.component(k, zeta, z);
    ExtForm scaled = B.component(k, zl, zzl);
    double expo = 1.0 - 2.0 * k;
    ExtForm predicted = base * Cpx{std::pow(lambda, expo), 0};
    REQUIRE((scaled - predicted).max_abs() < 1e-12 * base.max_abs());
  }
}

TEST_CASE("B evaluation on the diagonal is rejected") {
  BForm B = bm_components(bm_admissible(1));
  REQUIRE_THROWS_AS(B.component(1, pt(Cpx{0.5, 0}), pt(Cpx{0.5, 0})), SingularityError);
}

TEST_CASE("nabla_eta B = 1 off the diagonal") {
  for (int dim : {1, 2}) {
    BForm B = bm_components(bm_admissible(dim));
    Pt zeta = pt(Cpx{0.8, 0.1}, Cpx{-0.2, 0.5});
    Pt z = pt(Cpx{0.1, -0.2}, Cpx{0.3, 0.1});
    Pt eta = zeta - z;
    std::array<Cpx, 3> ea{eta[0], eta[1], eta[2]};
    // delta_eta B_{1,0} = 1
    Cpx one = contract_eta(ea, B.component(1, zeta, z)).coeff(0);
    REQUIRE(std::abs(one - Cpx{1, 0}) < 1e-12);
    if (dim == 2) {
      // delta_eta B_{2,1} = dbar B_{1,0}
      ExtForm lhs = contract_eta(ea, B.component(2, zeta, z));
      ExtForm rhs = dbar_fd(B.component_field(1), zeta, z, Side::zeta, 1e-5);
      REQUIRE((lhs - rhs).max_abs() < 1e-5);
    }
  }
}

TEST_CASE("ball weight is 1 with no higher terms where chi is flat") {
  WeightForm g = ball_weight(BumpProfile{1.21, 2.56}, 1);
  ExtForm v = g.total(pt(Cpx{0.4, 0.3}), pt(Cpx{0.1, 0}));
  REQUIRE(v.coeff(0) == Cpx{1, 0});
  REQUIRE(v.bidegree_part(1, 1).is_zero());
}

TEST_CASE("ball weight equals 1 on the diagonal inside the ball") {
  for (int dim : {1, 2}) {
    WeightForm g = ball_weight(BumpProfile{1.21, 2.56}, dim);
    Pt zeta = pt(Cpx{0.5, 0.2}, Cpx{0.1, -0.3});
    ExtForm v = g.total(zeta, zeta);
    REQUIRE(std::abs(v.coeff(0) - Cpx{1, 0}) < 1e-15);
  }
}

TEST_CASE("weight contract: nabla_eta g = 0 numerically") {
  auto residual = [](const WeightForm& W, const Pt& zeta, const Pt& z) {
    Pt eta = zeta - z;
    std::array<Cpx, 3> ea{eta[0], eta[1], eta[2]};
    ExtForm total = W.total(zeta, z);
    double worst = 0;
    for (int k = 0; k < W.dim; ++k) {
      ExtForm lhs = contract_eta(ea, total.bidegree_part(k + 1, k + 1));
      ExtForm rhs = dbar_fd(W.component(k), zeta, z, Side::zeta, 1e-4);
      worst = std::max(worst, (lhs - rhs).max_abs());
    }
    return worst;
  };

  WeightForm ball1 = ball_weight(BumpProfile{1.21, 2.56}, 1);
  auto zetas = points_in_disc(20, 1.7, 91);
  auto zs = points_in_disc(20, 0.5, 92);
  for (int i = 0; i < 20; ++i)
    REQUIRE(residual(ball1, pt(zetas[i]), pt(zs[i])) < 1e-5);

  WeightForm prod = weight_product(ball1, ball1);
  for (int i = 0; i < 10; ++i)
    REQUIRE(residual(prod, pt(zetas[i]), pt(zs[i])) < 1e-5);
}

TEST_CASE("product with the trivial weight changes nothing") {
  WeightForm g = ball_weight(BumpProfile{1.21, 2.56}, 2);
  WeightForm gp = weight_product(g, trivial_weight(2));
  Pt zeta = pt(Cpx{1.3, 0.2}, Cpx{0.4, -0.5});
  Pt z = pt(Cpx{0.2, 0}, Cpx{0, 0.1});
  REQUIRE(testutil::identical(g.total(zeta, z), gp.total(zeta, z)));
}

TEST_CASE("product weight is 1 on the diagonal") {
  WeightForm g = ball_weight(BumpProfile{1.21, 2.56}, 1);
  WeightForm gp = weight_product(g, g);
  Pt zeta = pt(Cpx{0.5, -0.1});
  REQUIRE(std::abs(gp.total(zeta, zeta).coeff(0) - Cpx{1, 0}) < 1e-15);
}

TEST_CASE("singular weight g_a: diagonal scalar term is 1") {
  WeightForm ga = singular_weight_ga({Poly::zeta(1)}, 1, 1);
  Pt zeta = pt(Cpx{0.7, 0.4});
  ExtForm v = ga.total(zeta, zeta);
  REQUIRE(std::abs(v.coeff(0) - Cpx{1, 0}) < 1e-15);
}

TEST_CASE("singular weight g_a: hand values for a = zeta_1") {
  // first term a(z) conj(a)/|a|^2 vanishes at z = 0
  WeightForm ga = singular_weight_ga({Poly::zeta(1)}, 1, 1);
  ExtForm v = ga.total(pt(Cpx{1, 0}), pt(Cpx{}));
  REQUIRE(std::abs(v.coeff(0)) < 1e-15);
  // for a single entry conj(a)/|a|^2 = 1/a is holomorphic, so the H-term
  // vanishes identically and g_a = a(z)/a(zeta)
  REQUIRE(v.bidegree_part(1, 1).max_abs() < 1e-15);
  ExtForm w = ga.total(pt(Cpx{0.5, 0.2}), pt(Cpx{0.3, 0}));
  REQUIRE(std::abs(w.coeff(0) - Cpx{0.3, 0} / Cpx{0.5, 0.2}) < 1e-14);
}

TEST_CASE("singular weight for a two-entry tuple carries a genuine (1,1) part") {
  WeightForm ga = singular_weight_ga({Poly::zeta(1), Poly::zeta(2)}, 2, 1);
  Pt zeta = pt(Cpx{0.8, 0.1}, Cpx{0.2, -0.4});
  Pt z = pt(Cpx{0.3, 0}, Cpx{0.1, 0.2});
  REQUIRE(ga.total(zeta, z).bidegree_part(1, 1).max_abs() > 1e-3);
  REQUIRE(std::abs(ga.total(zeta, zeta).coeff(0) - Cpx{1, 0}) < 1e-14);
  // contract at a few points away from {a = 0}
  for (int i = 0; i < 5; ++i) {
    Pt q = pt(Cpx{0.5 + 0.1 * i, 0.2}, Cpx{-0.3, 0.4 - 0.05 * i});
    Pt zz = pt(Cpx{0.1, 0.05 * i}, Cpx{0.2 - 0.03 * i, 0});
    Pt eta = q - zz;
    std::array<Cpx, 3> ea{eta[0], eta[1], eta[2]};
    ExtForm total = ga.total(q, zz);
    for (int k = 0; k < 2; ++k) {
      ExtForm lhs = contract_eta(ea, total.bidegree_part(k + 1, k + 1));
      ExtForm rhs = dbar_fd(ga.component(k), q, zz, Side::zeta, 1e-4);
      REQUIRE((lhs - rhs).max_abs() < 1e-5);
    }
  }
}

TEST_CASE("singular weight contract holds away from {a=0}") {
  WeightForm ga = singular_weight_ga({Poly::zeta(1)}, 1, 1);
  auto zetas = points_in_disc(40, 1.5, 93);
  auto zs = points_in_disc(40, 1.0, 94);
  int checked = 0;
  for (int i = 0; i < 40 && checked < 20; ++i) {
    if (std::abs(zetas[i]) < 0.3) continue;
    Pt zeta = pt(zetas[i]), z = pt(zs[i]);
    Pt eta = zeta - z;
    std::array<Cpx, 3> ea{eta[0], eta[1], eta[2]};
    ExtForm lhs = contract_eta(ea, ga.total(zeta, z).bidegree_part(1, 1));
    ExtForm rhs = dbar_fd(ga.component(0), zeta, z, Side::zeta, 1e-4);
    REQUIRE((lhs - rhs).max_abs() < 1e-5);
    ++checked;
  }
  REQUIRE(checked == 20);
}

TEST_CASE("singular weight evaluation at a(zeta) = 0 is rejected") {
  WeightForm ga = singular_weight_ga({Poly::zeta(1)}, 1, 1);
  REQUIRE_THROWS_AS(ga.total(pt(Cpx{}), pt(Cpx{0.5, 0})), SingularityError);
}

TEST_CASE("singular weight powers stay weights (spot check)") {
  WeightForm ga3 = singular_weight_ga({Poly::zeta(1)}, 1, 3);
  Pt zeta = pt(Cpx{0.9, 0.1});
  REQUIRE(std::abs(ga3.total(zeta, zeta).coeff(0) - Cpx{1, 0}) < 1e-14);
  REQUIRE_THROWS_AS(singular_weight_ga({Poly::zeta(1)}, 1, 8), UsageError);
}

TEST_CASE("hefer: linear case") {
  HeferForm H = hefer_single(Poly::zeta(1), 1);
  ExtForm v = H.H(pt(Cpx{1.5, 0}), pt(Cpx{0.5, 0}));
  REQUIRE(std::abs(v.coeff(blade_make(1, 0)) - Cpx{1, 0} / kTwoPiI) < 1e-15);
  // contract: delta_eta H = zeta - z
  Pt zeta = pt(Cpx{1.5, 0}), z = pt(Cpx{0.5, 0});
  Pt eta = zeta - z;
  Cpx d = contract_eta({eta[0], eta[1], eta[2]}, v).coeff(0);
  REQUIRE(std::abs(d - Cpx{1, 0}) < 1e-14);
}

TEST_CASE("hefer: divided difference for zeta^2") {
  HeferForm H = hefer_single(Poly::zeta(1, 2), 1);
  Pt zeta = pt(Cpx{2, 1}), z = pt(Cpx{-1, 0.5});
  ExtForm v = H.H(zeta, z);
  Cpx expect = (zeta[0] + z[0]) / kTwoPiI;
  REQUIRE(std::abs(v.coeff(blade_make(1, 0)) - expect) < 1e-14);
}

TEST_CASE("hefer exactness for zeta_1^2 - zeta_2^3 at random pairs") {
  HeferForm H = hefer_single(Poly::zeta(1, 2) - Poly::zeta(2, 3), 2);
  auto a = points_in_disc(100, 2.0, 95);
  auto b = points_in_disc(100, 2.0, 96);
  for (int i = 0; i < 50; ++i) {
    Pt zeta = pt(a[2 * i], a[2 * i + 1]);
    Pt z = pt(b[2 * i], b[2 * i + 1]);
    REQUIRE(std::abs(H.defect(zeta, z)) < 1e-12);
  }
}

TEST_CASE("hefer rejects z-dependent input") {
  REQUIRE_THROWS_AS(hefer_single(Poly::zvar(1), 1), UsageError);
}

TEST_CASE("kernel growth exponents match the singularity order") {
  // |(g ^ B)_{N-k, N-k-1}| ~ |eta|^{-(2N-2k-1)} as eta -> 0, N = 2
  WeightForm g = ball_weight(BumpProfile{1.21, 2.56}, 2);
  BForm B = bm_components(bm_admissible(2));
  Pt z = pt(Cpx{0.31, 0.12}, Cpx{-0.05, 0.2});
  Cpx dir{0.6, 0.8};
  for (int k = 0; k <= 1; ++k) {
    std::vector<double> xs, ys;
    for (int j = 2; j <= 9; ++j) {
      double t = std::ldexp(1.0, -j);
      Pt zeta = pt(z[0] + t * dir, z[1] + t * Cpx{0.3, -0.4});
      ExtForm gb = wedge(g.total(zeta, z), B.total(zeta, z));
      double nrm = gb.bidegree_part(2 - k, 2 - k - 1).norm2();
      double eta = std::sqrt(norm2(zeta - z, 2));
      xs.push_back(-std::log(eta));
      ys.push_back(std::log(nrm));
    }
    double slope = fit_line(xs, ys).slope;
    REQUIRE(std::abs(slope - (2 * 2 - 2 * k - 1)) < 0.1);
  }
}
