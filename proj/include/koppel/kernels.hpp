#pragma once

// Kernel ingredients for weighted integral representation formulas:
//
//   * admissible forms s with |s| <= C1 |eta| and |delta_eta s| >= C2 |eta|^2,
//   * the locally integrable components B_{k,k-1} = s ^ (dbar s)^{k-1} /
//     (delta_eta s)^k generated by them (Bochner-Martinelli for s = d|eta|^2),
//   * weights g = g_{0,0} + ... + g_{N,N} with nabla_eta g = 0 and
//     g_{0,0} = 1 on the diagonal, and
//   * single-function Hefer forms H with delta_eta H = h(zeta) - h(z).
//
// The 2*pi*i of delta_eta is absorbed into the stored sigma and Hefer
// components, so the user-facing contracts carry no stray constants.
// dbar here acts in zeta only; z-differentials of assembled kernels are
// always taken on final scalar output.

#include <algorithm>
#include <optional>
#include <vector>

#include "cutoff.hpp"
#include "exterior.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "types.hpp"

namespace koppel {

struct AdmissibleForm {
  int dim = 0;
  FormField s;        // (1,0)-form in d_eta
  FormField dbar_s;   // closed-form dbar_zeta of s
  double C1 = 1.0, C2 = 1.0;
};

// s = d|eta|^2 = sum_j conj(eta_j) d_eta_j with eta = zeta - z.
inline AdmissibleForm bm_admissible(int dim) {
  if (dim < 1 || dim > 3) throw DimensionError("bm_admissible: dim must be 1..3");
  FormField s{dim, [dim](const Pt& zeta, const Pt& z) {
                ExtForm f(dim);
                for (int j = 0; j < dim; ++j)
                  f.set(blade_make(1u << j, 0), std::conj(zeta[j] - z[j]));
                return f;
              }};
  // dbar s = sum_j d_zetabar_j ^ d_eta_j; stored on the canonical blade
  // d_eta_j ^ d_zetabar_j with coefficient -1.
  FormField ds{dim, [dim](const Pt&, const Pt&) {
                 ExtForm f(dim);
                 for (int j = 0; j < dim; ++j)
                   f.set(blade_make(1u << j, 1u << j), Cpx{-1, 0});
                 return f;
               }};
  return AdmissibleForm{dim, s, ds, 1.0, 1.0};
}

struct BForm {
  AdmissibleForm source;

  // B_{k,k-1}; singular exactly on the diagonal eta = 0.
  ExtForm component(int k, const Pt& zeta, const Pt& z) const {
    int dim = source.dim;
    if (k < 1 || k > dim) throw DimensionError("BForm: component index out of range");
    Pt eta = zeta - z;
    Cpx ds = deno(eta, dim);
    ExtForm sv = source.s(zeta, z);
    ExtForm num = sv;
    if (k > 1) {
      ExtForm dsv = source.dbar_s(zeta, z);
      for (int i = 1; i < k; ++i) num = wedge(num, dsv);
    }
    Cpx d = Cpx{1, 0};
    for (int i = 0; i < k; ++i) d *= ds;
    return num / d;
  }

  ExtForm total(const Pt& zeta, const Pt& z) const {
    ExtForm out(source.dim);
    for (int k = 1; k <= source.dim; ++k) out += component(k, zeta, z);
    return out;
  }

  FormField component_field(int k) const {
    return FormField{source.dim, [*this, k](const Pt& zeta, const Pt& z) {
                       return component(k, zeta, z);
                     }};
  }

 private:
  Cpx deno(const Pt& eta, int dim) const {
    double n2 = norm2(eta, dim);
    if (n2 < 1e-28)
      throw SingularityError("BForm: evaluation on the diagonal");
    // delta_eta s = 2*pi*i |eta|^2 for the Bochner-Martinelli choice
    return kTwoPiI * n2;
  }
};

inline BForm bm_components(const AdmissibleForm& s) { return BForm{s}; }

// A weight: graded components g_{k,k} packed into one mixed-degree field.
// z_radius records where the weight contract holds; support_radius, when
// set, is the compact zeta-support.
struct WeightForm {
  int dim = 0;
  FormField total;
  double z_radius = 0;
  std::optional<double> support_radius{};
  std::vector<double> kink_radii{};  // |zeta| radii where the profile is C^2 only

  FormField component(int k) const {
    FormField t = total;
    return FormField{dim, [t, k](const Pt& zeta, const Pt& z) {
                       return t(zeta, z).bidegree_part(k, k);
                     }};
  }
};

inline WeightForm trivial_weight(int dim) {
  return WeightForm{dim,
                    FormField{dim, [dim](const Pt&, const Pt&) {
                                return ExtForm::scalar(dim, Cpx{1, 0});
                              }},
                    1e30, std::nullopt, {}};
}

// The explicit ball weight g = chi - dbar chi ^ [sigma + sigma ^ dbar sigma
// + ...], sigma = conj(zeta).d_eta / (2 pi i (|zeta|^2 - conj(zeta).z)),
// holomorphic in z inside the ball and compactly supported in zeta.
// `chi` is a radial profile in t = |zeta|^2 with chi == 1 past the closed
// unit ball.
inline WeightForm ball_weight(const BumpProfile& chi, int dim) {
  if (dim < 1 || dim > 3) throw DimensionError("ball_weight: dim must be 1..3");
  if (chi.t0 <= 1.0)
    throw UsageError("ball_weight: chi must be 1 on a neighborhood of the closed unit ball");
  FormField total{dim, [chi, dim](const Pt& zeta, const Pt& z) {
    double t = norm2(zeta, dim);
    double c = chi(t);
    double dc = chi.deriv(t);
    ExtForm g = ExtForm::scalar(dim, Cpx{c, 0});
    if (dc != 0.0) {
      Cpx D{t, 0};
      for (int j = 0; j < dim; ++j) D -= std::conj(zeta[j]) * z[j];
      if (std::abs(D) < 1e-14)
        throw SingularityError("ball_weight: |zeta|^2 = conj(zeta).z inside supp dbar chi");
      ExtForm dchib(dim);  // dbar chi = chi'(t) sum_j zeta_j d_zetabar_j
      for (int j = 0; j < dim; ++j)
        dchib.set(blade_make(0, 1u << j), dc * zeta[j]);
      ExtForm sigma(dim);  // conj(zeta).d_eta / (2 pi i D)
      for (int j = 0; j < dim; ++j)
        sigma.set(blade_make(1u << j, 0), std::conj(zeta[j]) / (kTwoPiI * D));
      ExtForm dsigma(dim);
      if (dim > 1) {
        // dbar sigma = [sum_j d_zetabar_j ^ d_eta_j / D
        //              - (eta . d_zetabar) ^ (conj(zeta) . d_eta) / D^2] / 2 pi i
        for (int j = 0; j < dim; ++j)
          dsigma.set(blade_make(1u << j, 1u << j), Cpx{-1, 0} / (kTwoPiI * D));
        ExtForm etabar(dim), zbar_eta(dim);
        for (int j = 0; j < dim; ++j) {
          etabar.set(blade_make(0, 1u << j), zeta[j] - z[j]);
          zbar_eta.set(blade_make(1u << j, 0), std::conj(zeta[j]));
        }
        dsigma -= wedge(etabar, zbar_eta) * (Cpx{1, 0} / (kTwoPiI * D * D));
      }
      ExtForm series = sigma;  // sigma + sigma ^ dbar sigma + ...
      ExtForm power = sigma;
      for (int k = 2; k <= dim; ++k) {
        power = wedge(power, dsigma);
        series += power;
      }
      g -= wedge(dchib, series);
    }
    return g;
  }};
  return WeightForm{dim, total, 1.0, std::sqrt(chi.t1),
                    {std::sqrt(chi.t0), std::sqrt(chi.t1)}};
}

// The product of two weights is again a weight on the overlap.
inline WeightForm weight_product(const WeightForm& a, const WeightForm& b) {
  if (a.dim != b.dim) throw DimensionError("weight_product: dimension mismatch");
  FormField at = a.total, bt = b.total;
  FormField total{a.dim, [at, bt](const Pt& zeta, const Pt& z) {
                    return wedge(at(zeta, z), bt(zeta, z));
                  }};
  std::optional<double> supp = a.support_radius;
  if (b.support_radius && (!supp || *b.support_radius < *supp)) supp = b.support_radius;
  std::vector<double> kinks = a.kink_radii;
  kinks.insert(kinks.end(), b.kink_radii.begin(), b.kink_radii.end());
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
  return WeightForm{a.dim, total, std::min(a.z_radius, b.z_radius), supp, kinks};
}

struct HeferForm {
  int dim = 0;
  FormField H;                   // (1,0)-form, 2*pi*i absorbed
  Poly target;                   // the interpolated holomorphic polynomial
  std::array<Poly, 3> comps{};   // H_j(zeta, z) with sum_j H_j (zeta_j - z_j) = h(zeta) - h(z)

  Cpx defect(const Pt& zeta, const Pt& z) const {  // delta_eta H - (h(zeta) - h(z))
    Pt eta = zeta - z;
    Cpx s{};
    for (int j = 0; j < dim; ++j) s += comps[j].eval(zeta, z) * eta[j];
    return s - (target.eval(zeta) - target.eval(z));
  }
};

// Divided-difference Hefer form for a holomorphic polynomial h(zeta):
// telescope coordinate by coordinate in the fixed order 1..N, factoring each
// monomial exactly, so the contract holds to machine precision.
inline HeferForm hefer_single(const Poly& h, int dim) {
  if (dim < 1 || dim > 3) throw DimensionError("hefer_single: dim must be 1..3");
  if (h.depends_on_z()) throw UsageError("hefer_single: h must depend on zeta only");

  std::array<Poly, 3> comps{};
  for (const auto& [key, c] : h.terms()) {
    for (int j = 0; j < dim; ++j) {
      int aj = key[j];
      if (aj == 0) continue;
      // prefix l < j at z, suffix l > j at zeta, divided difference in slot j
      Poly term = Poly::constant(c);
      for (int l = 0; l < j; ++l)
        if (key[l]) term = term * Poly::zvar(l + 1, key[l]);
      for (int l = j + 1; l < 3; ++l)
        if (key[l]) term = term * Poly::zeta(l + 1, key[l]);
      Poly dd;
      for (int i = 0; i < aj; ++i) {
        Poly m = Poly::constant(Cpx{1, 0});
        if (i) m = m * Poly::zeta(j + 1, i);
        if (aj - 1 - i) m = m * Poly::zvar(j + 1, aj - 1 - i);
        dd += m;
      }
      comps[j] += term * dd;
    }
  }

  FormField H{dim, [comps, dim](const Pt& zeta, const Pt& z) {
                ExtForm f(dim);
                for (int j = 0; j < dim; ++j) {
                  Cpx v = comps[j].eval(zeta, z);
                  if (v != Cpx{}) f.set(blade_make(1u << j, 0), v / kTwoPiI);
                }
                return f;
              }};
  return HeferForm{dim, H, h, comps};
}

// Weight singular on {a = 0}:
//   g_a = a(z).conj(a)/|a|^2 + H^a . dbar(conj(a)/|a|^2),
// raised to an integer power by repeated products.  Holomorphic tuple `a`
// of up to three polynomial entries.
inline WeightForm singular_weight_ga(const std::vector<Poly>& a, int dim, int power = 1) {
  if (a.empty()) throw UsageError("singular_weight_ga: empty tuple");
  if (power < 1 || power + dim > 8)
    throw UsageError("singular_weight_ga: power out of the supported range");

  std::vector<HeferForm> hef;
  std::vector<std::array<Poly, 3>> grads;
  for (const Poly& aj : a) {
    hef.push_back(hefer_single(aj, dim));
    std::array<Poly, 3> g{};
    for (int k = 0; k < dim; ++k) g[k] = aj.partial_zeta(k + 1);
    grads.push_back(g);
  }

  FormField total{dim, [a, hef, grads, dim](const Pt& zeta, const Pt& z) {
    std::vector<Cpx> az(a.size()), azeta(a.size());
    double n2 = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      azeta[j] = a[j].eval(zeta);
      az[j] = a[j].eval(z);
      n2 += std::norm(azeta[j]);
    }
    if (n2 < 1e-28) throw SingularityError("singular_weight_ga: a(zeta) = 0");

    Cpx g00{};
    for (std::size_t j = 0; j < a.size(); ++j) g00 += az[j] * std::conj(azeta[j]);
    g00 /= n2;

    // dbar(|a|^2) = sum_k [ sum_l a_l conj(da_l/dzeta_k) ] d_zetabar_k
    ExtForm dnorm(dim);
    for (int k = 0; k < dim; ++k) {
      Cpx v{};
      for (std::size_t l = 0; l < a.size(); ++l)
        v += azeta[l] * std::conj(grads[l][k].eval(zeta));
      if (v != Cpx{}) dnorm.set(blade_make(0, 1u << k), v);
    }

    ExtForm g = ExtForm::scalar(dim, g00);
    for (std::size_t j = 0; j < a.size(); ++j) {
      ExtForm dbar_term(dim);  // dbar(conj(a_j)/|a|^2)
      for (int k = 0; k < dim; ++k) {
        Cpx v = std::conj(grads[j][k].eval(zeta)) / n2;
        if (v != Cpx{}) dbar_term.set(blade_make(0, 1u << k), v);
      }
      dbar_term -= dnorm * (std::conj(azeta[j]) / (n2 * n2));
      // antiholomorphic factor on the left, as in the ball weight's
      // dbar chi ^ sigma; the opposite order flips delta_eta g_{1,1}
      // against dbar g_{0,0} and breaks the weight contract
      g += wedge(dbar_term, hef[j].H(zeta, z));
    }
    return g;
  }};

  WeightForm base{dim, total, 1e30, std::nullopt, {}};
  WeightForm out = base;
  for (int i = 1; i < power; ++i) out = weight_product(out, base);
  return out;
}

}  // namespace koppel
