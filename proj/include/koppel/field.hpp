#pragma once

// Form-valued fields on Omega x Omega' and the finite-difference dbar.

#include <functional>
#include <utility>

#include "exterior.hpp"
#include "types.hpp"

namespace koppel {

// A smooth (away from its declared singular set) map (zeta, z) -> ExtForm.
// Evaluation is deterministic; fields are immutable once built.
struct FormField {
  int dim = 0;
  std::function<ExtForm(const Pt&, const Pt&)> eval;

  ExtForm operator()(const Pt& zeta, const Pt& z) const { return eval(zeta, z); }
};

enum class Side { zeta, z };

// Central-difference dbar on the chosen variable group.  Appends one
// antiholomorphic generator per coordinate (read as d_zetabar for
// Side::zeta and as d_zbar for Side::z); second order in `step`.
inline ExtForm dbar_fd(const FormField& f, const Pt& zeta, const Pt& z,
                       Side side, double step = 1e-4) {
  if (step <= 0) throw UsageError("dbar_fd: step must be positive");
  ExtForm out(f.dim);
  const Pt& base = (side == Side::zeta) ? zeta : z;
  for (int j = 0; j < f.dim; ++j) {
    auto at = [&](Cpx delta) {
      Pt p = base;
      p[j] += delta;
      return (side == Side::zeta) ? f.eval(p, z) : f.eval(zeta, p);
    };
    // d/dzbar = (d/dx + i d/dy) / 2
    ExtForm dx = at(Cpx{step, 0}) - at(Cpx{-step, 0});
    ExtForm dy = at(Cpx{0, step}) - at(Cpx{0, -step});
    ExtForm deriv = (dx + Cpx{0, 1} * dy) * Cpx{1.0 / (4.0 * step), 0};
    out += wedge(ExtForm::gen_bar(f.dim, j + 1), deriv);
  }
  return out;
}

inline FormField constant_field(int dim, const ExtForm& v) {
  return FormField{dim, [v, dim](const Pt&, const Pt&) {
                     (void)dim;
                     return v;
                   }};
}

}  // namespace koppel
