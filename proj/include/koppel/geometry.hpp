#pragma once

// Varieties in scope and their intrinsic data: hypersurfaces {h = 0} in C^2
// with the contraction field
//
//   gamma = -2 pi i sum_j conj(dh/dzeta_j)/|dh|^2 d/dzeta_j,
//
// monomial curves zeta_1^r = zeta_2^s with normalization tau -> (tau^s,
// tau^r), and structure forms omega.  The orientation sign is fixed once,
// by omega := -i^*(gamma . (dzeta_1 ^ dzeta_2)), which makes the cusp form
// come out as +2 pi i dtau / tau^{(r-1)(s-1)}; on the hyperplane
// {zeta_2 = 0} the same convention gives the constant -2 pi i dzeta_1.

#include <functional>
#include <vector>

#include "cutoff.hpp"
#include "exterior.hpp"
#include "field.hpp"
#include "laurent.hpp"
#include "poly.hpp"
#include "quad.hpp"
#include "types.hpp"

namespace koppel {

inline Cpx cpow(Cpx base, int n) {
  Cpx r{1, 0};
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

struct Hypersurface {
  Poly h;
  std::array<Poly, 2> grad{};
  std::vector<Pt> singular_locus{};

  static Hypersurface from_poly(const Poly& h, std::vector<Pt> singular = {}) {
    if (h.empty()) throw UsageError("Hypersurface: h must not vanish identically");
    Hypersurface X;
    X.h = h;
    X.grad = {h.partial_zeta(1), h.partial_zeta(2)};
    X.singular_locus = std::move(singular);
    return X;
  }
};

// gamma's coefficients at zeta; throws off the smooth locus where dh = 0.
inline std::array<Cpx, 3> gamma_coeffs(const Hypersurface& X, const Pt& zeta) {
  Cpx d1 = X.grad[0].eval(zeta), d2 = X.grad[1].eval(zeta);
  double n2 = std::norm(d1) + std::norm(d2);
  if (n2 < 1e-28) throw SingularityError("gamma: |dh| = 0");
  Cpx f = -kTwoPiI / n2;
  return {f * std::conj(d1), f * std::conj(d2), Cpx{}};
}

inline ExtForm gamma_contract(const Hypersurface& X, const Pt& zeta, const ExtForm& a) {
  return contract_vec(gamma_coeffs(X, zeta), a);
}

// The ambient representative -gamma . (dzeta_1 ^ dzeta_2) of the structure
// form, as a (1,0)-form in the d_eta generators.
inline FormField omega_ambient_field(const Hypersurface& X) {
  return FormField{2, [X](const Pt& zeta, const Pt&) {
                     ExtForm dz = wedge(ExtForm::gen_eta(2, 1), ExtForm::gen_eta(2, 2));
                     return -gamma_contract(X, zeta, dz);
                   }};
}

struct MonomialCurve {
  int r = 0, s = 0;
  Semigroup sg;

  static MonomialCurve make(int r, int s) {
    MonomialCurve c;
    c.sg = Semigroup::make(r, s);
    c.r = r;
    c.s = s;
    return c;
  }

  Pt point(Cpx tau) const { return pt(cpow(tau, s), cpow(tau, r)); }
  std::array<Cpx, 3> dpoint(Cpx tau) const {
    return {Cpx(static_cast<double>(s), 0) * cpow(tau, s - 1),
            Cpx(static_cast<double>(r), 0) * cpow(tau, r - 1), Cpx{}};
  }

  Hypersurface ambient() const {
    Poly h = Poly::zeta(1, r) - Poly::zeta(2, s);
    return Hypersurface::from_poly(h, {pt(Cpx{})});
  }

  int conductor() const { return sg.conductor; }
};

enum class StructureVariant { smooth_hyperplane, hypersurface_gamma, cusp_symbolic };

// Structure form of X, reduced to its dtau-density.  For the cusp the
// density is the exact Laurent datum 2 pi i / tau^{(r-1)(s-1)}; for a
// hyperplane it is the constant -2 pi i (this orientation, see above).
struct StructureForm {
  StructureVariant variant = StructureVariant::smooth_hyperplane;
  LaurentPoly density;
  int pole_order = 0;

  static StructureForm cusp(const MonomialCurve& c) {
    StructureForm f;
    f.variant = StructureVariant::cusp_symbolic;
    f.pole_order = c.conductor();
    f.density = LaurentPoly::monomial(-f.pole_order, kTwoPiI);
    return f;
  }
  static StructureForm hyperplane() {
    StructureForm f;
    f.variant = StructureVariant::smooth_hyperplane;
    f.density = LaurentPoly::constant(-kTwoPiI);
    return f;
  }
};

inline StructureForm cusp_structure_form(const MonomialCurve& c) {
  return StructureForm::cusp(c);
}

struct GammaCheckReport {
  double max_rel_dev = 0;
  double radius = 0;
  int samples = 0;
  bool pass = false;
};

// Samples the ambient gamma formula along tau -> (tau^s, tau^r) on the
// circle |tau| = radius and compares the pullback against the symbolic
// density.  Failing the tolerance is reported, not thrown.
inline GammaCheckReport pullback_gamma_check(const MonomialCurve& c, double radius,
                                             double tol, int samples = 64) {
  if (!(0 < radius && radius < 1))
    throw UsageError("pullback_gamma_check: radius must be in (0,1)");
  Hypersurface X = c.ambient();
  FormField omega = omega_ambient_field(X);
  StructureForm sym = StructureForm::cusp(c);
  GammaCheckReport rep;
  rep.radius = radius;
  rep.samples = samples;
  for (int k = 0; k < samples; ++k) {
    double th = 2.0 * kPi * k / samples;
    Cpx tau = radius * Cpx{std::cos(th), std::sin(th)};
    ExtForm amb = omega(c.point(tau), Pt{});
    ExtForm pulled = pullback_plane(amb, c.dpoint(tau));
    Cpx got = pulled.coeff(blade_make(1, 0));
    Cpx want = sym.density.eval(tau);
    rep.max_rel_dev = std::max(rep.max_rel_dev, std::abs(got - want) / std::abs(want));
  }
  rep.pass = rep.max_rel_dev < tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Lelong pairings <[X], xi>

// One-variable model: <dbar(1/zeta) ^ dzeta / 2 pi i, xi> via epsilon-circle
// contour values extrapolated with the schedule; equals xi(0) for smooth xi.
inline SepResult lelong_point_mass(const std::function<Cpx(Cpx)>& xi,
                                   const PVSchedule& sched, double tol = 1e-12,
                                   const QuadOptions& opts = {}) {
  sched.validate();
  std::vector<Cpx> family;
  for (double eps : sched.deltas) {
    QuadResult q = integrate_circle(
        Cpx{}, eps, [&](Cpx zeta) { return xi(zeta) / zeta; }, tol, opts);
    family.push_back(q.value / kTwoPiI);
  }
  return sep_regularize(family, sched);
}

// Graph case X = {zeta_2 = 0}: the pairing is plain planar quadrature of the
// test form's dzeta_1 ^ dzetabar_1 coefficient over the zeta_1 chart.
// radial_breaks mark cutoff kinks of the test form.
inline QuadResult lelong_graph_plane(const FormField& xi, double radius, double tol,
                                     const std::vector<double>& radial_breaks = {},
                                     const QuadOptions& opts = {}) {
  auto f = [&](Cpx z1) {
    ExtForm v = xi(pt(z1, Cpx{}), Pt{});
    return v.coeff(blade_make(1, 1)) * measure_factor(1);
  };
  QuadDomain d = QuadDomain::Disc(Cpx{}, radius);
  d.radial_breaks = radial_breaks;
  return integrate(d, f, tol, opts);
}

enum class CurveRoute { tau, graph };

// Pairing of the Lelong current of a monomial curve with an ambient test
// form xi (compact support inside |zeta| < 1), by either parametrization:
// the tau-disc, or the r-sheeted graph over zeta_2 with a cutoff schedule
// regularizing the branch point.
inline Cpx lelong_curve(const MonomialCurve& c, const FormField& xi,
                        CurveRoute route, const PVSchedule& sched,
                        double tau_radius, double tol = 1e-9,
                        const QuadOptions& opts = {}) {
  if (route == CurveRoute::tau) {
    auto f = [&](Cpx tau) {
      ExtForm pulled = pullback_plane(xi(c.point(tau), Pt{}), c.dpoint(tau));
      return pulled.top() * measure_factor(1);
    };
    return integrate(QuadDomain::Disc(Cpx{}, tau_radius), f, tol, opts).value;
  }

  // graph route over w = zeta_2, r sheets zeta_1 = w^{s/r} e^{2 pi i k s / r}
  double w_radius = std::pow(tau_radius, c.r);
  double sr = static_cast<double>(c.s) / c.r;
  auto f = [&](Cpx w) {
    double rho = std::abs(w);
    if (rho < 1e-300) return Cpx{};
    double th = std::arg(w);
    Cpx sum{};
    for (int k = 0; k < c.r; ++k) {
      double phase = (th + 2.0 * kPi * k) * sr;
      Cpx z1 = std::pow(rho, sr) * Cpx{std::cos(phase), std::sin(phase)};
      Cpx dz1 = Cpx(sr, 0) * z1 / w;
      ExtForm pulled = pullback_plane(xi(pt(z1, w), Pt{}), {dz1, Cpx{1, 0}, Cpx{}});
      sum += pulled.top() * measure_factor(1);
    }
    return sum;
  };
  StepProfile cut{1.0, 2.0};
  PVResult pv = pv_integrate(QuadDomain::Disc(Cpx{}, w_radius), f, cut, sched, tol, opts);
  return pv.quad.value;
}

// ---------------------------------------------------------------------------
// Small fitting helpers shared by the blow-up probes.

struct LineFit {
  double slope = 0;
  double intercept = 0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw UsageError("fit_line: need >= 2 points");
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) throw UsageError("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

// Fitted growth exponent of |omega| along |tau| = eps via the ambient gamma
// route: slope of log|density| against -log eps.
inline double omega_blowup_exponent(const MonomialCurve& c,
                                    const std::vector<double>& radii) {
  Hypersurface X = c.ambient();
  FormField omega = omega_ambient_field(X);
  std::vector<double> xs, ys;
  for (double eps : radii) {
    Cpx tau{eps, 0};
    ExtForm pulled = pullback_plane(omega(c.point(tau), Pt{}), c.dpoint(tau));
    xs.push_back(-std::log(eps));
    ys.push_back(std::log(std::abs(pulled.coeff(blade_make(1, 0)))));
  }
  return fit_line(xs, ys).slope;
}

}  // namespace koppel
