#pragma once

// Koppelman operators K and P assembled from the kernel factory, identity
// verification, compact-support solves with obstruction, Hartogs extension,
// and the moment-condition classifier on monomial curves.
//
// Operator conventions.  On a planar domain (N = n = 1),
//
//   K phi (z) = integral of (g ^ B) ^ phi,    P phi (z) = integral of g ^ phi,
//
// extracting the full-degree coefficient against -2i dA.  On a hypersurface
// X = {h = 0} in C^2 the kernels are
//
//   k = -i^*( gamma . (H ^ g ^ B) ),     p = -i^*( gamma . (H ^ g) ),
//
// pulled back along the parametrization and integrated in the normalization
// coordinate as principal values at X_sing.  The leading sign matches the
// structure-form orientation fixed in geometry.hpp; every operator here is
// pinned by an oracle test (Cauchy transform, reproduction of holomorphic
// functions, the Koppelman identity itself).
//
// dbar of computed outputs is always taken numerically on the final scalar
// field, never assumed.

#include <functional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "kernels.hpp"
#include "quad.hpp"
#include "types.hpp"

namespace koppel {

// ---------------------------------------------------------------------------
// finite-difference dbar on scalar output fields

inline Cpx dbar_scalar(const std::function<Cpx(Cpx)>& F, Cpx z, double step) {
  Cpx dx = F(z + Cpx{step, 0}) - F(z - Cpx{step, 0});
  Cpx dy = F(z + Cpx{0, step}) - F(z - Cpx{0, step});
  return (dx + Cpx{0, 1} * dy) / Cpx{4.0 * step, 0};
}

inline std::array<Cpx, 2> dbar_scalar2(const std::function<Cpx(const Pt&)>& F,
                                       const Pt& z, double step) {
  std::array<Cpx, 2> out{};
  for (int j = 0; j < 2; ++j) {
    auto shift = [&](Cpx d) {
      Pt p = z;
      p[j] += d;
      return F(p);
    };
    Cpx dx = shift(Cpx{step, 0}) - shift(Cpx{-step, 0});
    Cpx dy = shift(Cpx{0, step}) - shift(Cpx{0, -step});
    out[j] = (dx + Cpx{0, 1} * dy) / Cpx{4.0 * step, 0};
  }
  return out;
}

// ---------------------------------------------------------------------------
// test inputs

// phi = coeff(zeta) d_zetabar on a planar domain, supported in
// |zeta| <= support_radius.  (0,1)-forms in one variable are dbar-closed.
struct OneFormInput {
  std::function<Cpx(Cpx)> coeff;
  double support_radius = 1.0;
};

// phi a function with closed-form dbar coefficient.
struct ScalarInput {
  std::function<Cpx(Cpx)> value;
  std::function<Cpx(Cpx)> dbar_coeff;
  double support_radius = 1.0;
};

// ---------------------------------------------------------------------------
// planar (smooth disc) assembly

struct DiscAssembly {
  WeightForm g;
  BForm B;
  // annulus where the weight's transition lives (supp dbar chi); P reduces
  // to an integral there.  Unset for the trivial weight (P == 0).
  std::optional<std::pair<double, double>> weight_annulus{};
};

inline DiscAssembly make_disc_assembly(const WeightForm& g,
                                       std::optional<std::pair<double, double>> ann) {
  if (g.dim != 1) throw DimensionError("make_disc_assembly: weight must have dim 1");
  return DiscAssembly{g, bm_components(bm_admissible(1)), ann};
}

// K of a (0,1)-form: the weighted Cauchy transform.
inline Cpx disc_K(const DiscAssembly& A, const OneFormInput& phi, Cpx z, double tol,
                  const QuadOptions& opts = {}) {
  QuadDomain d = QuadDomain::Disc(Cpx{}, phi.support_radius);
  if (std::abs(z) < phi.support_radius * 0.999) d.puncture = z;
  Pt zp = pt(z);
  auto f = [&](Cpx zeta) {
    Cpx c = phi.coeff(zeta);
    if (c == Cpx{}) return Cpx{};
    Pt zq = pt(zeta);
    ExtForm ker = wedge(A.g.total(zq, zp), A.B.total(zq, zp));
    ExtForm ph(1);
    ph.set(blade_make(0, 1), c);
    return wedge(ker, ph).top() * measure_factor(1);
  };
  return integrate(d, f, tol, opts).value;
}

// P of a function; holomorphic in z on the weight's z-domain.
inline Cpx disc_P(const DiscAssembly& A, const std::function<Cpx(Cpx)>& phi, Cpx z,
                  double tol, const QuadOptions& opts = {}) {
  if (!A.weight_annulus) return Cpx{};  // trivial weight: g_{1,1} == 0
  auto [lo, hi] = *A.weight_annulus;
  QuadDomain d = QuadDomain::Annulus(Cpx{}, lo, hi);
  Pt zp = pt(z);
  auto f = [&](Cpx zeta) {
    Pt zq = pt(zeta);
    ExtForm g = A.g.total(zq, zp);
    return g.top() * phi(zeta) * measure_factor(1);
  };
  return integrate(d, f, tol, opts).value;
}

// ---------------------------------------------------------------------------
// hypersurface assembly (cusp or hyperplane), parametrized over tau

struct CurveAssembly {
  Hypersurface X;
  std::function<Pt(Cpx)> param;
  std::function<std::array<Cpx, 3>(Cpx)> dparam;
  HeferForm H;
  WeightForm g;        // ambient weight in C^2
  StructureForm omega;
  BForm B = bm_components(bm_admissible(2));
  double tau_max = 1.0;  // parameter radius covering the weight's support
  std::vector<double> tau_breaks{};  // weight kinks mapped to |tau| radii
  std::optional<MonomialCurve> curve{};
};

inline double cusp_tau_max(const MonomialCurve& c, double ambient_t1) {
  // solve |tau|^{2s} + |tau|^{2r} = t1 by bisection
  double lo = 0, hi = 2;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double v = std::pow(mid, 2 * c.s) + std::pow(mid, 2 * c.r);
    (v < ambient_t1 ? lo : hi) = mid;
  }
  return lo;
}

inline CurveAssembly make_cusp_assembly(const MonomialCurve& c, const WeightForm& g) {
  if (g.dim != 2) throw DimensionError("make_cusp_assembly: weight must have dim 2");
  CurveAssembly A;
  A.X = c.ambient();
  A.param = [c](Cpx tau) { return c.point(tau); };
  A.dparam = [c](Cpx tau) { return c.dpoint(tau); };
  A.H = hefer_single(A.X.h, 2);
  A.g = g;
  A.omega = StructureForm::cusp(c);
  A.tau_max = g.support_radius ? cusp_tau_max(c, *g.support_radius * *g.support_radius)
                               : 1.0;
  for (double rk : g.kink_radii) {
    double tb = cusp_tau_max(c, rk * rk);
    if (tb < A.tau_max * (1 - 1e-12)) A.tau_breaks.push_back(tb);
  }
  A.curve = c;
  return A;
}

// The hyperplane {zeta_2 = 0} through the same machinery; its operators must
// agree with the one-variable disc assembly (pinned by a test).
inline CurveAssembly make_plane_assembly(const WeightForm& g) {
  if (g.dim != 2) throw DimensionError("make_plane_assembly: weight must have dim 2");
  CurveAssembly A;
  A.X = Hypersurface::from_poly(Poly::zeta(2));
  A.param = [](Cpx tau) { return pt(tau, Cpx{}); };
  A.dparam = [](Cpx) { return std::array<Cpx, 3>{Cpx{1, 0}, Cpx{}, Cpx{}}; };
  A.H = hefer_single(Poly::zeta(2), 2);
  A.g = g;
  A.omega = StructureForm::hyperplane();
  A.tau_max = g.support_radius ? *g.support_radius : 1.0;
  for (double rk : g.kink_radii)
    if (rk < A.tau_max * (1 - 1e-12)) A.tau_breaks.push_back(rk);
  return A;
}

// -i^*( gamma . (H ^ g [^ B]) ) as a one-variable form at (tau, tau_z).
inline ExtForm curve_kernel(const CurveAssembly& A, bool with_B, Cpx tau, Cpx tau_z) {
  Pt zeta = A.param(tau), z = A.param(tau_z);
  ExtForm w = wedge(A.H.H(zeta, z), A.g.total(zeta, z));
  if (with_B) w = wedge(w, A.B.total(zeta, z));
  ExtForm contracted = gamma_contract(A.X, zeta, w);
  return -pullback_plane(contracted, A.dparam(tau));
}

// K phi for a (0,1)-form psi(tau) dtaubar supported on an annulus away from
// the singular parameter tau = 0.  The optional schedule wraps the integral
// in the cutoff limit (it settles immediately once 2 delta < the support).
inline Cpx curve_K(const CurveAssembly& A, const std::function<Cpx(Cpx)>& psi,
                   double supp_lo, double supp_hi, Cpx tau_z, double tol,
                   const PVSchedule* sched = nullptr, const QuadOptions& opts = {}) {
  QuadDomain d = QuadDomain::Disc(Cpx{}, std::min(supp_hi, A.tau_max));
  if (std::abs(tau_z) < d.radius * 0.999) d.puncture = tau_z;
  auto f = [&](Cpx tau) {
    Cpx c = psi(tau);
    if (c == Cpx{}) return Cpx{};
    ExtForm ker = curve_kernel(A, true, tau, tau_z);
    ExtForm ph(1);
    ph.set(blade_make(0, 1), c);
    return wedge(ker, ph).top() * measure_factor(1);
  };
  if (sched) {
    StepProfile cut{1.0, 2.0};
    auto masked = [&](Cpx tau) {
      return (std::abs(tau) <= supp_lo * 0.5) ? Cpx{} : f(tau);
    };
    // cutoff limit: constant family once 2 delta < supp_lo
    PVResult pv = pv_integrate(d, masked, cut, *sched, tol, opts);
    return pv.quad.value;
  }
  return integrate(d, f, tol, opts).value;
}

// P phi for a function psi(tau) on the curve; principal value at tau = 0.
inline Cpx curve_P(const CurveAssembly& A, const std::function<Cpx(Cpx)>& psi,
                   Cpx tau_z, const PVSchedule& sched, double tol,
                   const QuadOptions& opts = {}) {
  QuadDomain d = QuadDomain::Disc(Cpx{}, A.tau_max);
  d.radial_breaks = A.tau_breaks;
  auto f = [&](Cpx tau) {
    ExtForm ker = curve_kernel(A, false, tau, tau_z);
    return ker.top() * psi(tau) * measure_factor(1);
  };
  StepProfile cut{1.0, 2.0};
  PVResult pv = pv_integrate(d, f, cut, sched, tol, opts);
  return pv.quad.value;
}

// K phi for inputs supported across tau = 0: split at rho ~ |tau_z|/4 into a
// diagonal piece (punctured polar) and a cutoff-regularized piece near the
// singular point, which never meets the diagonal.
inline Cpx curve_K_split(const CurveAssembly& A, const std::function<Cpx(Cpx)>& psi,
                         double supp_hi, Cpx tau_z, double tol,
                         const QuadOptions& opts = {}) {
  double R = std::min(supp_hi, A.tau_max);
  double rho = std::min(std::abs(tau_z) / 4.0, R / 8.0);
  if (rho < 1e-12) throw UsageError("curve_K_split: tau_z too close to the singular point");
  StepProfile mask{1.0, 2.0};

  auto base = [&](Cpx tau) {
    Cpx c = psi(tau);
    if (c == Cpx{}) return Cpx{};
    ExtForm ker = curve_kernel(A, true, tau, tau_z);
    ExtForm ph(1);
    ph.set(blade_make(0, 1), c);
    return wedge(ker, ph).top() * measure_factor(1);
  };

  // piece away from 0 (diagonal handled by the puncture)
  QuadDomain da = QuadDomain::Disc(Cpx{}, R);
  da.puncture = tau_z;
  auto fa = [&](Cpx tau) {
    double m = mask(std::abs(tau) / rho);
    return (m == 0.0) ? Cpx{} : base(tau) * m;
  };
  Cpx A_val = integrate(da, fa, tol, opts).value;

  // piece near 0 (no diagonal), principal value in the cutoff limit
  QuadDomain db = QuadDomain::Disc(Cpx{}, std::min(2.2 * rho, R));
  auto fb = [&](Cpx tau) {
    double m = 1.0 - mask(std::abs(tau) / rho);
    return (m == 0.0) ? Cpx{} : base(tau) * m;
  };
  PVSchedule local;
  for (int j = 2; j <= 9; ++j) local.deltas.push_back(rho * std::ldexp(1.0, -j));
  local.extrapolation = PVSchedule::Extrap::none;
  StepProfile cut{1.0, 2.0};
  Cpx B_val = pv_integrate(db, fb, cut, local, tol, opts).quad.value;

  return A_val + B_val;
}

// ---------------------------------------------------------------------------
// identity verification

struct PointResidual {
  Cpx z{};
  double residual = 0;
};

struct SolveReport {
  std::vector<PointResidual> points;        // residuals of the stated identity
  std::vector<std::pair<Pt, Cpx>> values;   // solution values on the grid
  double max_residual = 0;
  std::vector<std::pair<std::string, Cpx>> obstruction;
  bool obstruction_zero = true;
  bool solved = false;
  std::string note;

  void push(Cpx z, double r) {
    points.push_back({z, r});
    max_residual = std::max(max_residual, r);
  }
};

// phi(z) = K(dbar phi)(z) + P phi(z) for functions on the disc (the K-of-a-
// function term vanishes by degree, so dbar K phi contributes nothing).
inline SolveReport verify_koppelman_disc(const DiscAssembly& A, const ScalarInput& phi,
                                         const std::vector<Cpx>& grid, double tol,
                                         const QuadOptions& opts = {}) {
  SolveReport rep;
  OneFormInput dphi{phi.dbar_coeff, phi.support_radius};
  for (Cpx z : grid) {
    Cpx k = disc_K(A, dphi, z, tol, opts);
    Cpx p = disc_P(A, phi.value, z, tol, opts);
    rep.push(z, std::abs(phi.value(z) - k - p));
  }
  rep.solved = true;
  return rep;
}

// dbar K phi = phi for dbar-closed (0,1) input on the disc, dbar taken by
// central differences on the output field.
inline SolveReport verify_dbar_solve_disc(const DiscAssembly& A, const OneFormInput& phi,
                                          const std::vector<Cpx>& grid, double tol,
                                          double fd_step, const QuadOptions& opts = {}) {
  SolveReport rep;
  auto K = [&](Cpx z) { return disc_K(A, phi, z, tol, opts); };
  for (Cpx z : grid) {
    Cpx got = dbar_scalar(K, z, fd_step);
    rep.push(z, std::abs(got - phi.coeff(z)));
  }
  rep.solved = true;
  return rep;
}

// dbar K phi = phi on the curve, for ring-supported pullback (0,1) input.
inline SolveReport verify_koppelman_curve(const CurveAssembly& A,
                                          const std::function<Cpx(Cpx)>& psi,
                                          double supp_lo, double supp_hi,
                                          const std::vector<Cpx>& grid, double tol,
                                          double fd_step, const PVSchedule* sched,
                                          const QuadOptions& opts = {}) {
  SolveReport rep;
  auto K = [&](Cpx tz) { return curve_K(A, psi, supp_lo, supp_hi, tz, tol, sched, opts); };
  for (Cpx tz : grid) {
    Cpx got = dbar_scalar(K, tz, fd_step);
    rep.push(tz, std::abs(got - psi(tz)));
  }
  rep.solved = true;
  return rep;
}

// ---------------------------------------------------------------------------
// moment condition and classification on monomial curves

struct MomentReport {
  int k = 0;  // exponent tested when phi = tau^k; -1 for general phi
  std::vector<std::pair<int, Cpx>> residues;  // semigroup exponent m -> residue
  bool extends = false;
};

// Residues of phi * tau^m / tau^c over the strongly holomorphic monomial
// family tau^m, m in <r,s>, m <= 2c.  Exact index arithmetic: extends iff
// every residue vanishes.
inline MomentReport moment_check(const MonomialCurve& c, const LaurentPoly& phi,
                                 const std::vector<int>& xi_family) {
  MomentReport rep;
  rep.k = -1;
  bool all_zero = true;
  for (int m : xi_family) {
    if (!c.sg.member(m))
      throw UsageError("moment_check: xi exponent outside the semigroup");
    Cpx res = residue(phi * LaurentPoly::monomial(m - c.conductor()));
    rep.residues.emplace_back(m, res);
    if (res != Cpx{}) all_zero = false;
  }
  rep.extends = all_zero;
  return rep;
}

inline std::vector<int> default_xi_family(const MonomialCurve& c) {
  return c.sg.elements_upto(2 * c.conductor());
}

struct ClassifyRow {
  int k = 0;
  bool extends = false;
  bool semigroup_member = false;
};

// Moment verdicts for phi = tau^k, k = 0..k_max, cross-checked against the
// brute-force semigroup oracle.  Any disagreement is a build-stopping error.
inline std::vector<ClassifyRow> classify_monomials(const MonomialCurve& c, int k_max) {
  if (k_max < 2 * c.conductor())
    throw UsageError("classify_monomials: k_max must reach 2 * conductor");
  std::vector<int> xi = default_xi_family(c);
  std::vector<ClassifyRow> rows;
  for (int k = 0; k <= k_max; ++k) {
    MomentReport m = moment_check(c, LaurentPoly::monomial(k), xi);
    ClassifyRow row{k, m.extends, c.sg.member(k)};
    if (row.extends != row.semigroup_member)
      throw InvariantViolation("classify_monomials: moment verdict disagrees with the semigroup oracle at k = " +
                               std::to_string(k));
    rows.push_back(row);
  }
  return rows;
}

// Two principal-value routes to the same moment pairing, both normalized to
// the residue value:
//   (a) the epsilon-circle contour of f * omega / (2 pi i)^2,
//   (b) the cutoff route  integral of dbar chi_delta ^ (f omega) / (2 pi i)^2
//       extrapolated over the schedule.
inline Cpx moment_contour(const MonomialCurve& c, const LaurentPoly& f, double eps,
                          double tol = 1e-12, const QuadOptions& opts = {}) {
  StructureForm w = StructureForm::cusp(c);
  auto integrand = [&](Cpx tau) { return f.eval(tau) * w.density.eval(tau); };
  QuadResult q = integrate_circle(Cpx{}, eps, integrand, tol, opts);
  return q.value / (kTwoPiI * kTwoPiI);
}

inline Cpx moment_cutoff(const MonomialCurve& c, const LaurentPoly& f,
                         const PVSchedule& sched, double outer_radius,
                         double tol = 1e-10, const QuadOptions& opts = {}) {
  sched.validate();
  StructureForm w = StructureForm::cusp(c);
  StepProfile chi{1.0, 2.0};
  std::vector<Cpx> family;
  for (double delta : sched.deltas) {
    QuadDomain d = QuadDomain::Disc(Cpx{}, outer_radius);
    d.radial_breaks = {delta * chi.t0, delta * chi.t1};
    auto g = [&](Cpx tau) {
      double a = std::abs(tau);
      double dchi = chi.deriv(a / delta) / delta;
      if (dchi == 0.0) return Cpx{};
      // dbar chi_delta = chi' * tau/(2|tau|) dtaubar;  wedge against
      // f * omega * dtau and read the full-degree coefficient
      Cpx coef = dchi * tau / (2.0 * a);
      ExtForm bar(1);
      bar.set(blade_make(0, 1), coef);
      ExtForm al(1);
      al.set(blade_make(1, 0), f.eval(tau) * w.density.eval(tau));
      return wedge(bar, al).top() * measure_factor(1);
    };
    family.push_back(integrate(d, g, tol, opts).value);
  }
  SepResult sep = sep_regularize(family, sched);
  return sep.value / (kTwoPiI * kTwoPiI);
}

// ---------------------------------------------------------------------------
// compact-support solve, C^2 ball (smooth case)

// A dbar-closed (0,1)-form supported on the shell lo <= |zeta| <= hi.
struct ShellForm {
  std::function<std::array<Cpx, 2>(const Pt&)> comps;  // (f_1, f_2) of f_j dzetabar_j
  double lo = 0, hi = 0;
};

// Bochner-Martinelli transform of a shell form in C^2: the unique solution
// of dbar v = f with support in the bounded complement component.
inline Cpx bm2_transform(const ShellForm& f, const Pt& z, double tol,
                         const QuadOptions& outer_opts = {},
                         const QuadOptions& inner_opts = {}) {
  BForm B = bm_components(bm_admissible(2));
  QuadDomain d = QuadDomain::Ball2({Cpx{}, Cpx{}}, f.hi);
  double lo2 = f.lo * f.lo, hi2 = f.hi * f.hi;
  d.inner_breaks = [lo2, hi2](Cpx z1) {
    std::vector<double> br;
    double a2 = std::norm(z1);
    if (lo2 - a2 > 1e-14) br.push_back(std::sqrt(lo2 - a2));
    if (hi2 - a2 > 1e-14) br.push_back(std::sqrt(hi2 - a2));
    return br;
  };
  double zn = std::sqrt(norm2(z, 2));
  if (zn > f.lo * 0.9) {  // z may meet the shell: refine toward the diagonal
    d.puncture2 = {std::optional<Cpx>(z[0]), std::optional<Cpx>(z[1])};
  }
  auto integrand = [&](Cpx z1, Cpx z2) {
    Pt zeta = pt(z1, z2);
    double a = std::sqrt(norm2(zeta, 2));
    if (a < f.lo - 1e-12 || a > f.hi + 1e-12) return Cpx{};
    auto [f1, f2] = f.comps(zeta);
    if (f1 == Cpx{} && f2 == Cpx{}) return Cpx{};
    ExtForm ph(2);
    ph.set(blade_make(0, 1), f1);
    ph.set(blade_make(0, 2), f2);
    ExtForm ker = B.component(2, zeta, z);
    return wedge(ker, ph).top() * measure_factor(2);
  };
  return integrate_ball2(d, integrand, tol, outer_opts, inner_opts).value;
}

struct CompactSolveBall2 {
  BumpProfile chi_tilde;  // z-localization in t = |z|^2, == 1 past the shell
};

// q = 0 <= nu - 2 on the smooth ball: the obstruction vanishes by pure
// degree count (the swapped weight is holomorphic in zeta), asserted exactly.
// Solution values are reported on zgrid; dbar v = f residuals (central
// differences on the output) on the optional check grid.
inline SolveReport compact_support_solve_ball2(const CompactSolveBall2& cfg,
                                               const ShellForm& f,
                                               const std::vector<Pt>& zgrid,
                                               const std::vector<Pt>& check_grid,
                                               double tol, double fd_step,
                                               const QuadOptions& outer_opts = {},
                                               const QuadOptions& inner_opts = {}) {
  SolveReport rep;
  rep.obstruction_zero = true;
  rep.note = "obstruction structurally zero (degree count, q <= nu-2)";
  auto v = [&](const Pt& z) {
    double c = cfg.chi_tilde(norm2(z, 2));
    if (c == 0.0) return Cpx{};
    return Cpx{c, 0} * bm2_transform(f, z, tol, outer_opts, inner_opts);
  };
  for (const Pt& z : zgrid) rep.values.emplace_back(z, v(z));
  for (const Pt& z : check_grid) {
    std::array<Cpx, 2> got = dbar_scalar2(v, z, fd_step);
    std::array<Cpx, 2> want = f.comps(z);
    double a = norm2(z, 2);
    if (a < f.lo * f.lo || a > f.hi * f.hi) want = {Cpx{}, Cpx{}};
    double r = std::max(std::abs(got[0] - want[0]), std::abs(got[1] - want[1]));
    rep.push(z[0], r);
  }
  rep.solved = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Hartogs extension across a compact in the C^2 ball

struct HartogsPoint {
  Pt z{};
  Cpx value{};
};

struct HartogsReport {
  bool extends = false;
  std::vector<HartogsPoint> values;
  std::vector<std::pair<int, Cpx>> residues;  // cusp variant: offending moments
  std::string note;
};

// phi holomorphic on the ball minus K = {|zeta| <= sqrt(chiK.t0)}; the
// extension is Phi = (1 - chi_K) phi + v with dbar v = dbar chi_K ^ phi
// solved with compact support.  nu = 2 here, so no moment condition enters.
inline HartogsReport hartogs_extend_ball2(const std::function<Cpx(const Pt&)>& phi,
                                          const BumpProfile& chiK,
                                          const std::vector<Pt>& zs, double tol,
                                          const QuadOptions& outer_opts = {},
                                          const QuadOptions& inner_opts = {}) {
  ShellForm f;
  f.lo = std::sqrt(chiK.t0);
  f.hi = std::sqrt(chiK.t1);
  f.comps = [phi, chiK](const Pt& zeta) -> std::array<Cpx, 2> {
    double t = norm2(zeta, 2);
    double dc = chiK.deriv(t);
    if (dc == 0.0) return {Cpx{}, Cpx{}};
    Cpx p = phi(zeta);
    return {dc * zeta[0] * p, dc * zeta[1] * p};
  };
  HartogsReport rep;
  rep.extends = true;
  rep.note = "depth 2: extension exists for every holomorphic phi";
  for (const Pt& z : zs) {
    double c = chiK(norm2(z, 2));
    Cpx v = bm2_transform(f, z, tol, outer_opts, inner_opts);
    Cpx val = (c >= 1.0) ? v : (1.0 - c) * phi(z) + v;
    rep.values.push_back({z, val});
  }
  return rep;
}

// Cusp variant: phi weakly holomorphic (a Laurent polynomial in tau).  The
// moment condition decides extension; when it holds the strongly holomorphic
// extension is assembled exactly from semigroup decompositions k = s i + r j.
inline HartogsReport hartogs_extend_cusp(const MonomialCurve& c, const LaurentPoly& phi) {
  HartogsReport rep;
  for (const auto& [e, coef] : phi.coeffs()) {
    (void)coef;
    if (e < 0) throw UsageError("hartogs_extend_cusp: phi must be bounded near 0");
  }
  MomentReport m = moment_check(c, phi, default_xi_family(c));
  if (!m.extends) {
    rep.extends = false;
    for (const auto& [mm, r] : m.residues)
      if (r != Cpx{}) rep.residues.emplace_back(mm, r);
    rep.note = "moment condition fails: no strongly holomorphic extension";
    return rep;
  }
  // build the ambient polynomial achieving each exponent
  Poly amb;
  for (const auto& [e, coef] : phi.coeffs()) {
    bool done = false;
    for (int i = 0; i * c.s <= e && !done; ++i) {
      if ((e - i * c.s) % c.r == 0) {
        int j = (e - i * c.s) / c.r;
        Poly mono = Poly::constant(coef);
        if (i) mono = mono * Poly::zeta(1, i);
        if (j) mono = mono * Poly::zeta(2, j);
        amb += mono;
        done = true;
      }
    }
    if (!done)
      throw InvariantViolation("hartogs_extend_cusp: extendable exponent without semigroup decomposition");
  }
  rep.extends = true;
  rep.note = "strongly holomorphic extension (ambient polynomial)";
  for (double t : {0.2, 0.4, 0.6}) {
    Pt z = c.point(Cpx{t, 0});
    rep.values.push_back({z, amb.eval(z)});
  }
  return rep;
}

// Cusp compact-support solve for f = dbar chi_K ^ phi at q = 0 = nu - 1:
// the obstruction is exactly the moment residues; when they vanish the
// weighted transform solves dbar v = f with support in supp chi_tilde.
inline SolveReport compact_support_solve_cusp(const CurveAssembly& A,
                                              const LaurentPoly& phi,
                                              const BumpProfile& chiK,
                                              const BumpProfile& chi_tilde,
                                              const std::vector<Cpx>& check_taus,
                                              double tol, double fd_step,
                                              const QuadOptions& opts = {}) {
  if (!A.curve) throw UsageError("compact_support_solve_cusp: assembly has no curve");
  const MonomialCurve& c = *A.curve;
  SolveReport rep;
  MomentReport m = moment_check(c, phi, default_xi_family(c));
  for (const auto& [mm, r] : m.residues)
    rep.obstruction.emplace_back("m=" + std::to_string(mm), r);
  rep.obstruction_zero = m.extends;
  if (!m.extends) {
    rep.solved = false;
    rep.note = "nonvanishing obstruction: no compactly supported solution claimed";
    return rep;
  }

  // f = chi_K'(|tau|^2) * tau * phi(tau) dtaubar, supported on the chi_K shell
  auto fcoef = [&](Cpx tau) {
    double dc = chiK.deriv(std::norm(tau));
    return (dc == 0.0) ? Cpx{} : Cpx{dc, 0} * tau * phi.eval(tau);
  };
  double lo = std::sqrt(chiK.t0), hi = std::sqrt(chiK.t1);

  // swapped localization: scalar weight chi_tilde(|z|^2)
  CurveAssembly S = A;
  S.g = WeightForm{2, FormField{2, [chi_tilde](const Pt&, const Pt& z) {
                     return ExtForm::scalar(2, Cpx{chi_tilde(norm2(z, 2)), 0});
                   }}, 1e30, std::nullopt};

  auto v = [&](Cpx tz) {
    double w = chi_tilde(norm2(c.point(tz), 2));
    if (w == 0.0) return Cpx{};
    return curve_K(S, fcoef, lo, hi, tz, tol, nullptr, opts);
  };
  for (Cpx tz : check_taus) {
    Cpx got = dbar_scalar(v, tz, fd_step);
    rep.push(tz, std::abs(got - fcoef(tz)));
  }
  rep.solved = true;
  rep.note = "dbar v = f residuals on the check grid";
  return rep;
}

// ---------------------------------------------------------------------------
// asymptotic probe: fitted blow-up exponent of K phi along a path toward a
// singular point, slope of log|K phi| against -log delta

struct ProbeReport {
  std::vector<double> deltas;
  std::vector<double> absK;
  double slope = 0;        // tail window
  double slope_prev = 0;   // previous window
  bool tail_stable = false;
  bool finite = true;
};

inline ProbeReport probe_fit(const std::vector<double>& deltas,
                             const std::vector<double>& absK, int window = 4) {
  ProbeReport rep;
  rep.deltas = deltas;
  rep.absK = absK;
  std::size_t n = deltas.size();
  if (n < static_cast<std::size_t>(window) + 2)
    throw UsageError("probe_fit: path too short");
  for (double v : absK)
    if (!std::isfinite(v) || v <= 0) rep.finite = false;
  if (!rep.finite) return rep;
  auto slope_of = [&](std::size_t a, std::size_t b) {
    std::vector<double> xs, ys;
    for (std::size_t i = a; i < b; ++i) {
      xs.push_back(-std::log(deltas[i]));
      ys.push_back(std::log(absK[i]));
    }
    return fit_line(xs, ys).slope;
  };
  rep.slope = slope_of(n - window, n);
  rep.slope_prev = slope_of(n - window - 1, n - 1);
  rep.tail_stable = std::abs(rep.slope - rep.slope_prev) < 0.3;
  return rep;
}

inline ProbeReport asymptotic_probe_disc(const DiscAssembly& A, const OneFormInput& phi,
                                         const std::vector<Cpx>& path, double tol,
                                         const QuadOptions& opts = {}) {
  std::vector<double> deltas, vals;
  for (Cpx z : path) {
    deltas.push_back(std::abs(z));
    vals.push_back(std::abs(disc_K(A, phi, z, tol, opts)));
  }
  return probe_fit(deltas, vals);
}

inline ProbeReport asymptotic_probe_cusp(const CurveAssembly& A,
                                         const std::function<Cpx(Cpx)>& psi,
                                         double supp_hi, const std::vector<Cpx>& path,
                                         double tol, const QuadOptions& opts = {}) {
  std::vector<double> deltas, vals;
  for (Cpx tz : path) {
    deltas.push_back(std::abs(tz));
    vals.push_back(std::abs(curve_K_split(A, psi, supp_hi, tz, tol, opts)));
  }
  return probe_fit(deltas, vals);
}

}  // namespace koppel
