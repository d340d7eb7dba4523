#pragma once

// Deterministic quadrature over circles, discs, annuli and the C^2 ball.
//
// Planar area integrals run in polar coordinates about a pole (the domain
// center, or a declared puncture).  The radial direction uses Gauss-Legendre
// panels between fixed edges -- dyadic edges refining toward a puncture,
// plus any caller-supplied breakpoints (cutoff kinks) -- and the angular
// direction uses the equispaced trapezoid rule, doubled until the value
// settles.  Node generation has no randomness, so results are
// bit-reproducible for a fixed configuration.
//
// Circle integrals are complex line integrals (counterclockwise); area
// integrals are taken against the real area element dA.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "cutoff.hpp"
#include "pv.hpp"
#include "types.hpp"

namespace koppel {

struct QuadOptions {
  int gl_points = 16;        // radial Gauss-Legendre nodes per panel
  int theta_init = 32;       // starting trapezoid node count
  int theta_max = 2048;
  int base_panels = 4;       // uniform radial panels when nothing refines
  int puncture_levels = 30;  // dyadic depth toward a puncture
  double theta_safety = 0.5; // accept when |V(2n) - V(n)| < theta_safety*tol
};

struct QuadResult {
  Cpx value{};
  double err_estimate = 0;
  long nodes_used = 0;
};

struct ExcludedDisc {
  Cpx center{};
  double radius = 0;  // 0 marks a bare puncture
};

struct QuadDomain {
  enum class Kind { circle, disc, annulus, ball2 };
  Kind kind = Kind::disc;

  // planar domains
  Cpx center{};
  double radius = 0;            // circle / disc
  double r_in = 0, r_out = 0;   // annulus
  std::optional<Cpx> puncture{};
  std::vector<double> radial_breaks{};  // absolute radii measured from center

  // ball2
  std::array<Cpx, 2> center2{};
  double radius2 = 0;
  std::array<std::optional<Cpx>, 2> puncture2{};
  std::function<std::vector<double>(Cpx)> inner_breaks{};

  static QuadDomain Circle(Cpx c, double r) {
    QuadDomain d;
    d.kind = Kind::circle;
    d.center = c;
    d.radius = r;
    return d;
  }
  static QuadDomain Disc(Cpx c, double r) {
    QuadDomain d;
    d.kind = Kind::disc;
    d.center = c;
    d.radius = r;
    return d;
  }
  static QuadDomain Annulus(Cpx c, double ri, double ro) {
    QuadDomain d;
    d.kind = Kind::annulus;
    d.center = c;
    d.r_in = ri;
    d.r_out = ro;
    return d;
  }
  static QuadDomain Ball2(const std::array<Cpx, 2>& c, double r) {
    QuadDomain d;
    d.kind = Kind::ball2;
    d.center2 = c;
    d.radius2 = r;
    return d;
  }

  void validate() const {
    switch (kind) {
      case Kind::circle:
      case Kind::disc:
        if (radius <= 0) throw UsageError("QuadDomain: radius must be positive");
        break;
      case Kind::annulus:
        if (!(0 < r_in && r_in < r_out))
          throw UsageError("QuadDomain: need 0 < r_in < r_out");
        break;
      case Kind::ball2:
        if (radius2 <= 0) throw UsageError("QuadDomain: radius must be positive");
        break;
    }
  }
};

namespace quad_detail {

struct GLRule {
  std::vector<double> x, w;  // on [0,1]
};

// Classic Newton iteration on the Legendre recurrence, mapped to [0,1].
inline GLRule make_gl(int n) {
  GLRule r;
  r.x.resize(n);
  r.w.resize(n);
  const double eps = 1e-15;
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double z1, pp;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::abs(z - z1) > eps);
    // nodes on [-1,1] are -z and z; map to [0,1]
    r.x[i] = 0.5 * (1.0 - z);
    r.x[n - 1 - i] = 0.5 * (1.0 + z);
    r.w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

inline const GLRule& gl(int n) {
  static std::map<int, GLRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gl(n)).first;
  return it->second;
}

// Radial edge list in the scaled coordinate u in [u_min, 1].
inline std::vector<double> radial_edges(double u_min, bool punctured,
                                        const std::vector<double>& breaks,
                                        const QuadOptions& opts) {
  std::vector<double> e;
  e.push_back(u_min);
  e.push_back(1.0);
  for (double b : breaks)
    if (b > u_min + 1e-15 && b < 1.0 - 1e-15) e.push_back(b);
  if (punctured) {
    double lo = 1.0;
    for (double b : e)
      if (b > u_min + 1e-15) lo = std::min(lo, b);
    double u = lo;
    for (int k = 0; k < opts.puncture_levels; ++k) {
      u *= 0.5;
      if (u <= u_min + 1e-18) break;
      e.push_back(u);
    }
  } else {
    for (int k = 1; k < opts.base_panels; ++k)
      e.push_back(u_min + (1.0 - u_min) * k / opts.base_panels);
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end(),
                      [](double a, double b) { return std::abs(a - b) < 1e-15; }),
          e.end());
  return e;
}

// Tensor polar quadrature about `pole` with outer boundary `rb(theta)`.
// u-edges are fractions of rb; integration against the real area element.
inline QuadResult polar_area(Cpx pole, const std::function<double(double)>& rb,
                             const std::vector<double>& u_edges,
                             const std::function<Cpx(Cpx)>& f, double tol,
                             const QuadOptions& opts) {
  const GLRule& rule = gl(opts.gl_points);
  long nodes = 0;

  auto sweep = [&](int ntheta) {
    Cpx acc{};
    for (int it = 0; it < ntheta; ++it) {
      double theta = 2.0 * kPi * it / ntheta;
      Cpx dir{std::cos(theta), std::sin(theta)};
      double R = rb(theta);
      if (!(R > 0)) throw UsageError("quad: pole outside domain boundary");
      Cpx radial{};
      for (std::size_t p = 0; p + 1 < u_edges.size(); ++p) {
        double a = u_edges[p], b = u_edges[p + 1];
        double len = b - a;
        Cpx panel{};
        for (int k = 0; k < opts.gl_points; ++k) {
          double u = a + len * rule.x[k];
          double r = u * R;
          panel += rule.w[k] * (f(pole + r * dir) * r);
          ++nodes;
        }
        radial += panel * Cpx{len * R, 0};
      }
      acc += radial;
    }
    return acc * Cpx{2.0 * kPi / ntheta, 0};
  };

  Cpx prev = sweep(opts.theta_init);
  double err = std::numeric_limits<double>::infinity();
  for (int n = 2 * opts.theta_init; n <= opts.theta_max; n *= 2) {
    Cpx cur = sweep(n);
    err = std::abs(cur - prev);
    prev = cur;
    if (err < opts.theta_safety * tol) return QuadResult{prev, err, nodes};
  }
  if (err > tol) throw AccuracyError("quad: angular budget exhausted", prev, err);
  return QuadResult{prev, err, nodes};
}

}  // namespace quad_detail

// Counterclockwise complex line integral over a circle (spectral trapezoid).
inline QuadResult integrate_circle(Cpx center, double radius,
                                   const std::function<Cpx(Cpx)>& f, double tol,
                                   const QuadOptions& opts = {}) {
  long nodes = 0;
  auto sweep = [&](int n) {
    Cpx acc{};
    for (int k = 0; k < n; ++k) {
      double theta = 2.0 * kPi * k / n;
      Cpx tau = center + radius * Cpx{std::cos(theta), std::sin(theta)};
      Cpx dtau = Cpx{0, 1} * (tau - center);
      acc += f(tau) * dtau;
      ++nodes;
    }
    return acc * Cpx{2.0 * kPi / n, 0};
  };
  Cpx prev = sweep(opts.theta_init);
  double err = std::numeric_limits<double>::infinity();
  for (int n = 2 * opts.theta_init; n <= opts.theta_max; n *= 2) {
    Cpx cur = sweep(n);
    err = std::abs(cur - prev);
    prev = cur;
    if (err < opts.theta_safety * tol) return QuadResult{prev, err, nodes};
  }
  if (err > tol) throw AccuracyError("quad: circle budget exhausted", prev, err);
  return QuadResult{prev, err, nodes};
}

// Area integral of f against dA over a disc or annulus (circle domains take
// the line-integral path above).  A puncture inside the domain switches to
// polar coordinates about it with dyadic radial refinement.
inline QuadResult integrate(const QuadDomain& d, const std::function<Cpx(Cpx)>& f,
                            double tol, const QuadOptions& opts = {}) {
  d.validate();
  using quad_detail::polar_area;
  using quad_detail::radial_edges;

  if (d.kind == QuadDomain::Kind::circle)
    return integrate_circle(d.center, d.radius, f, tol, opts);

  if (d.kind == QuadDomain::Kind::ball2)
    throw UsageError("integrate: ball2 takes a two-variable integrand");

  double Rout = (d.kind == QuadDomain::Kind::disc) ? d.radius : d.r_out;

  bool punctured = d.puncture.has_value();
  Cpx pole = punctured ? *d.puncture : d.center;
  bool pole_at_center = std::abs(pole - d.center) < 1e-15;

  if (d.kind == QuadDomain::Kind::annulus && !pole_at_center)
    throw UsageError("integrate: off-center puncture in an annulus is unsupported");
  if (punctured && !pole_at_center && std::abs(pole - d.center) >= Rout)
    throw UsageError("integrate: puncture outside the domain");

  if (pole_at_center) {
    double u_min = (d.kind == QuadDomain::Kind::annulus) ? d.r_in / Rout : 0.0;
    std::vector<double> br;
    for (double b : d.radial_breaks) br.push_back(b / Rout);
    auto edges = radial_edges(u_min, punctured, br, opts);
    return polar_area(
        d.center, [Rout](double) { return Rout; }, edges, f, tol, opts);
  }

  // polar about an off-center puncture; boundary radius depends on theta
  Cpx dc = d.center - pole;
  double R = Rout, a2 = std::norm(dc);
  auto rb = [dc, R, a2](double theta) {
    Cpx e{std::cos(theta), std::sin(theta)};
    double proj = (std::conj(dc) * e).real();
    return proj + std::sqrt(std::max(proj * proj + R * R - a2, 0.0));
  };
  auto edges = radial_edges(0.0, true, {}, opts);
  return polar_area(pole, rb, edges, f, tol, opts);
}

// Iterated integral over the ball |zeta - c| <= R in C^2, zeta_2 innermost.
// Punctures refine the corresponding plane; inner_breaks(zeta_1) may supply
// radii (about center2[1]) where the inner integrand has kinks.
inline QuadResult integrate_ball2(const QuadDomain& d,
                                  const std::function<Cpx(Cpx, Cpx)>& f,
                                  double tol, const QuadOptions& outer_opts = {},
                                  const QuadOptions& inner_opts_in = {},
                                  double inner_tol_factor = 0.1) {
  d.validate();
  if (d.kind != QuadDomain::Kind::ball2)
    throw UsageError("integrate_ball2: domain is not ball2");

  long inner_nodes = 0;
  QuadOptions inner_opts = inner_opts_in;
  double inner_tol = tol * inner_tol_factor;

  auto outer_f = [&](Cpx z1) -> Cpx {
    double rho2 = d.radius2 * d.radius2 - std::norm(z1 - d.center2[0]);
    if (rho2 <= 1e-28) return Cpx{};
    double R2 = std::sqrt(rho2);
    QuadDomain inner = QuadDomain::Disc(d.center2[1], R2);
    if (d.puncture2[1] &&
        std::abs(*d.puncture2[1] - d.center2[1]) < R2 * (1.0 - 1e-12))
      inner.puncture = d.puncture2[1];
    if (d.inner_breaks) {
      for (double b : d.inner_breaks(z1))
        if (b > 1e-15 && b < R2 - 1e-15) inner.radial_breaks.push_back(b);
    }
    QuadResult q =
        integrate(inner, [&](Cpx z2) { return f(z1, z2); }, inner_tol, inner_opts);
    inner_nodes += q.nodes_used;
    return q.value;
  };

  QuadDomain outer = QuadDomain::Disc(d.center2[0], d.radius2);
  outer.puncture = d.puncture2[0];
  outer.radial_breaks = d.radial_breaks;
  QuadResult q = integrate(outer, outer_f, tol, outer_opts);
  q.nodes_used += inner_nodes;
  return q;
}

struct PVResult {
  QuadResult quad{};
  SepResult sep{};
  std::vector<Cpx> family{};
};

// Principal value at the domain center: integrate chi(|zeta - c| / delta) * f
// over the schedule's deltas and extrapolate.  The cutoff's transition radii
// become radial breakpoints, so each level is resolved exactly.
inline PVResult pv_integrate(const QuadDomain& d, const std::function<Cpx(Cpx)>& f,
                             const StepProfile& cutoff, const PVSchedule& sched,
                             double tol, const QuadOptions& opts = {}) {
  d.validate();
  sched.validate();
  std::vector<Cpx> family;
  long nodes = 0;
  double qerr = 0;
  for (double delta : sched.deltas) {
    QuadDomain level = d;
    level.radial_breaks.push_back(delta * cutoff.t0);
    level.radial_breaks.push_back(delta * cutoff.t1);
    auto fd = [&](Cpx zeta) {
      double t = std::abs(zeta - d.center) / delta;
      double c = cutoff(t);
      return (c == 0.0) ? Cpx{} : f(zeta) * c;
    };
    QuadResult q = integrate(level, fd, tol, opts);
    nodes += q.nodes_used;
    qerr = std::max(qerr, q.err_estimate);
    family.push_back(q.value);
  }
  SepResult sep = sep_regularize(family, sched);
  return PVResult{QuadResult{sep.value, std::max(qerr, sep.err_estimate), nodes},
                  sep, family};
}

}  // namespace koppel
