#pragma once

// Exterior algebra over the anticommuting generators
//
//   d_eta_1 .. d_eta_N,  d_zetabar_1 .. d_zetabar_N,   N <= 3,
//
// with complex coefficients.  A blade is a subset of the six generators,
// encoded in one byte: bits 0..2 select d_eta_j, bits 3..5 select
// d_zetabar_j.  The canonical generator order is all d_eta ascending, then
// all d_zetabar ascending; wedge signs are transposition counts against that
// order, taken from a table built at compile time.
//
// Forms are dense over the 64 possible blades (at most 1 KB), with a bitset
// of occupied slots, so arithmetic allocates nothing and iteration order is
// fixed.

#include <array>
#include <bit>
#include <cstdint>

#include "types.hpp"

namespace koppel {

using Blade = std::uint8_t;  // eta mask in bits 0..2, bar mask in bits 3..5

inline constexpr int kBladeCount = 64;

constexpr Blade blade_make(unsigned eta_mask, unsigned bar_mask) {
  return static_cast<Blade>((eta_mask & 7u) | ((bar_mask & 7u) << 3));
}
constexpr unsigned blade_eta(Blade b) { return b & 7u; }
constexpr unsigned blade_bar(Blade b) { return (b >> 3) & 7u; }
constexpr int blade_eta_deg(Blade b) { return std::popcount(blade_eta(b)); }
constexpr int blade_bar_deg(Blade b) { return std::popcount(blade_bar(b)); }
constexpr int blade_deg(Blade b) { return std::popcount(static_cast<unsigned>(b)); }

namespace detail {

// Parity of moving blade b's generators left through blade a's, i.e. the
// number of pairs (x in a, y in b) with pos(x) > pos(y) in the canonical
// order (positions 0..5).
constexpr int merge_sign(unsigned a, unsigned b) {
  int inv = 0;
  for (int p = 0; p < 6; ++p)
    if (b & (1u << p))
      for (int q = p + 1; q < 6; ++q)
        if (a & (1u << q)) ++inv;
  return (inv & 1) ? -1 : +1;
}

struct SignTable {
  std::array<std::array<std::int8_t, kBladeCount>, kBladeCount> s{};
};

constexpr SignTable make_sign_table() {
  SignTable t{};
  for (unsigned a = 0; a < kBladeCount; ++a)
    for (unsigned b = 0; b < kBladeCount; ++b)
      t.s[a][b] = (a & b) ? 0 : static_cast<std::int8_t>(merge_sign(a, b));
  return t;
}

inline constexpr SignTable kSign = make_sign_table();

}  // namespace detail

class ExtForm {
 public:
  explicit ExtForm(int dim) : dim_(dim) {
    if (dim < 1 || dim > 3) throw DimensionError("ExtForm: dim must be 1..3");
  }

  static ExtForm scalar(int dim, Cpx c) {
    ExtForm f(dim);
    f.set(0, c);
    return f;
  }
  // j is 1-based.
  static ExtForm gen_eta(int dim, int j) {
    ExtForm f(dim);
    f.check_index(j);
    f.set(blade_make(1u << (j - 1), 0), Cpx{1.0, 0.0});
    return f;
  }
  static ExtForm gen_bar(int dim, int j) {
    ExtForm f(dim);
    f.check_index(j);
    f.set(blade_make(0, 1u << (j - 1)), Cpx{1.0, 0.0});
    return f;
  }

  int dim() const { return dim_; }

  Cpx coeff(Blade b) const { return c_[b]; }

  void set(Blade b, Cpx v) {
    c_[b] = v;
    if (v != Cpx{})
      nz_ |= (1ull << b);
    else
      nz_ &= ~(1ull << b);
  }

  void add(Blade b, Cpx v) {
    c_[b] += v;
    nz_ |= (1ull << b);
  }

  bool is_zero(double tol = 0.0) const {
    for (std::uint64_t m = nz_; m;) {
      int b = std::countr_zero(m);
      m &= m - 1;
      if (std::abs(c_[b]) > tol) return false;
    }
    return true;
  }

  double max_abs() const {
    double r = 0;
    for (std::uint64_t m = nz_; m;) {
      int b = std::countr_zero(m);
      m &= m - 1;
      r = std::max(r, std::abs(c_[b]));
    }
    return r;
  }

  double norm2() const {  // l2 over blades
    double r = 0;
    for (std::uint64_t m = nz_; m;) {
      int b = std::countr_zero(m);
      m &= m - 1;
      r += std::norm(c_[b]);
    }
    return std::sqrt(r);
  }

  // Coefficient of the full blade d_eta_1..N ^ d_zetabar_1..N.
  Cpx top() const {
    unsigned full = (1u << dim_) - 1u;
    return c_[blade_make(full, full)];
  }

  ExtForm bidegree_part(int p, int q) const {
    ExtForm out(dim_);
    for (std::uint64_t m = nz_; m;) {
      int b = std::countr_zero(m);
      m &= m - 1;
      if (blade_eta_deg(static_cast<Blade>(b)) == p &&
          blade_bar_deg(static_cast<Blade>(b)) == q && c_[b] != Cpx{})
        out.set(static_cast<Blade>(b), c_[b]);
    }
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t m = nz_; m;) {
      int b = std::countr_zero(m);
      m &= m - 1;
      if (c_[b] != Cpx{}) fn(static_cast<Blade>(b), c_[b]);
    }
  }

  ExtForm& operator+=(const ExtForm& o) {
    require_same_dim(o);
    o.for_each([&](Blade b, Cpx v) { add(b, v); });
    return *this;
  }
  ExtForm& operator-=(const ExtForm& o) {
    require_same_dim(o);
    o.for_each([&](Blade b, Cpx v) { add(b, -v); });
    return *this;
  }
  ExtForm& operator*=(Cpx s) {
    for (std::uint64_t m = nz_; m;) {
      int b = std::countr_zero(m);
      m &= m - 1;
      c_[b] *= s;
    }
    return *this;
  }

  friend ExtForm operator+(ExtForm a, const ExtForm& b) { return a += b; }
  friend ExtForm operator-(ExtForm a, const ExtForm& b) { return a -= b; }
  friend ExtForm operator*(ExtForm a, Cpx s) { return a *= s; }
  friend ExtForm operator*(Cpx s, ExtForm a) { return a *= s; }
  friend ExtForm operator/(ExtForm a, Cpx s) { return a *= (Cpx{1.0, 0.0} / s); }
  friend ExtForm operator-(ExtForm a) { return a *= Cpx{-1.0, 0.0}; }

  void require_same_dim(const ExtForm& o) const {
    if (dim_ != o.dim_) throw DimensionError("ExtForm: dimension mismatch");
  }

 private:
  void check_index(int j) const {
    if (j < 1 || j > dim_) throw DimensionError("ExtForm: generator index out of range");
  }

  int dim_;
  std::array<Cpx, kBladeCount> c_{};
  std::uint64_t nz_ = 0;
};

// Sign-correct anticommutative product.
inline ExtForm wedge(const ExtForm& a, const ExtForm& b) {
  a.require_same_dim(b);
  ExtForm out(a.dim());
  a.for_each([&](Blade ba, Cpx ca) {
    b.for_each([&](Blade bb, Cpx cb) {
      int s = detail::kSign.s[ba][bb];
      if (s == 0) return;
      out.add(static_cast<Blade>(ba | bb),
              (s > 0) ? ca * cb : -(ca * cb));
    });
  });
  return out;
}

// Interior multiplication with the (1,0)-vector sum_j v_j d/d_eta_j (no 2*pi*i
// factor).  Antiderivation of degree -1: d_zetabar factors pass through
// untouched since they sit after all d_eta in the canonical order.
inline ExtForm contract_vec(const std::array<Cpx, 3>& v, const ExtForm& a) {
  ExtForm out(a.dim());
  a.for_each([&](Blade b, Cpx c) {
    unsigned eta = blade_eta(b);
    for (int j = 0; j < a.dim(); ++j) {
      unsigned bit = 1u << j;
      if (!(eta & bit)) continue;
      if (v[j] == Cpx{}) continue;
      int below = std::popcount(eta & (bit - 1u));
      Cpx term = v[j] * c;
      out.add(static_cast<Blade>(b & ~bit), (below & 1) ? -term : term);
    }
  });
  return out;
}

// delta_eta: interior multiplication with 2*pi*i * sum_j eta_j d/d_eta_j.
inline ExtForm contract_eta(const std::array<Cpx, 3>& eta, const ExtForm& a) {
  std::array<Cpx, 3> v{kTwoPiI * eta[0], kTwoPiI * eta[1], kTwoPiI * eta[2]};
  return contract_vec(v, a);
}

// Pull a dim-`from` form back to a one-variable parameter: each d_eta_j maps
// to (dz_dt[j]) dtau and each d_zetabar_j to conj(dz_dt[j]) dtaubar.
// Generators are converted in canonical order, so signs come out of wedge.
inline ExtForm pullback_plane(const ExtForm& a, const std::array<Cpx, 3>& dz_dt) {
  ExtForm out(1);
  a.for_each([&](Blade b, Cpx c) {
    ExtForm term = ExtForm::scalar(1, c);
    unsigned eta = blade_eta(b), bar = blade_bar(b);
    for (int j = 0; j < 3; ++j)
      if (eta & (1u << j)) term = wedge(term, ExtForm::gen_eta(1, 1) * dz_dt[j]);
    for (int j = 0; j < 3; ++j)
      if (bar & (1u << j)) term = wedge(term, ExtForm::gen_bar(1, 1) * std::conj(dz_dt[j]));
    out += term;
  });
  return out;
}

// Integral of F * (full blade) over R^{2N} equals measure_factor(N) * the
// integral of F against the real volume element: each dz_j ^ dzbar_j is
// -2i dx_j dy_j, and sorting the full blade into that pairing contributes
// (-1)^{N(N-1)/2}.
inline Cpx measure_factor(int dim) {
  Cpx m{1.0, 0.0};
  for (int j = 0; j < dim; ++j) m *= Cpx{0.0, -2.0};
  int swaps = dim * (dim - 1) / 2;
  return (swaps & 1) ? -m : m;
}

}  // namespace koppel
