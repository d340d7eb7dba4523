#pragma once

// Exact Laurent-polynomial calculus in the normalization parameter tau, plus
// the numerical-semigroup oracle for monomial curves.  Exponents are exact
// integers; no truncation thresholds anywhere.

#include <map>
#include <vector>

#include "types.hpp"

namespace koppel {

class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly monomial(int exponent, Cpx c = Cpx{1, 0}) {
    LaurentPoly p;
    if (c != Cpx{}) p.c_[exponent] = c;
    return p;
  }
  static LaurentPoly constant(Cpx c) { return monomial(0, c); }

  bool empty() const { return c_.empty(); }

  Cpx coeff(int exponent) const {
    auto it = c_.find(exponent);
    return it == c_.end() ? Cpx{} : it->second;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.c_) {
      auto it = c_.find(e);
      if (it == c_.end())
        c_[e] = c;
      else {
        it->second += c;
        if (it->second == Cpx{}) c_.erase(it);
      }
    }
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }

  friend LaurentPoly operator*(const LaurentPoly& a, Cpx s) {
    LaurentPoly out;
    if (s == Cpx{}) return out;
    for (const auto& [e, c] : a.c_) out.c_[e] = c * s;
    return out;
  }
  friend LaurentPoly operator*(Cpx s, const LaurentPoly& a) { return a * s; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    return a += b * Cpx{-1, 0};
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.c_)
      for (const auto& [eb, cb] : b.c_) {
        auto it = out.c_.find(ea + eb);
        if (it == out.c_.end())
          out.c_[ea + eb] = ca * cb;
        else {
          it->second += ca * cb;
          if (it->second == Cpx{}) out.c_.erase(it);
        }
      }
    return out;
  }

  LaurentPoly derivative() const {
    LaurentPoly out;
    for (const auto& [e, c] : c_)
      if (e != 0) out.c_[e - 1] = c * Cpx(static_cast<double>(e), 0);
    return out;
  }

  Cpx eval(Cpx tau) const {
    Cpx sum{};
    for (const auto& [e, c] : c_) {
      Cpx t{1, 0};
      int n = e >= 0 ? e : -e;
      for (int i = 0; i < n; ++i) t *= tau;
      sum += (e >= 0) ? c * t : c / t;
    }
    return sum;
  }

  const std::map<int, Cpx>& coeffs() const { return c_; }

 private:
  std::map<int, Cpx> c_;
};

// (1/2*pi*i) * the contour integral of p dtau around 0: the tau^{-1} coefficient.
inline Cpx residue(const LaurentPoly& p) { return p.coeff(-1); }

// The numerical semigroup <r, s> for coprime 2 <= r < s; its conductor is
// (r-1)(s-1) and membership is decided by brute force over a <= k/r.
struct Semigroup {
  int r = 0;
  int s = 0;
  int conductor = 0;

  static Semigroup make(int r, int s) {
    if (!(2 <= r && r < s)) throw UsageError("Semigroup: need 2 <= r < s");
    int a = r, b = s;
    while (b) {
      int t = a % b;
      a = b;
      b = t;
    }
    if (a != 1) throw UsageError("Semigroup: r and s must be coprime");
    return Semigroup{r, s, (r - 1) * (s - 1)};
  }

  bool member(int k) const {
    if (k < 0) throw UsageError("Semigroup::member: k must be >= 0");
    for (int a = 0; a * r <= k; ++a)
      if ((k - a * r) % s == 0) return true;
    return false;
  }

  std::vector<int> gaps() const {
    std::vector<int> out;
    for (int k = 0; k < conductor; ++k)
      if (!member(k)) out.push_back(k);
    return out;
  }

  // Elements of the semigroup up to and including `bound`.
  std::vector<int> elements_upto(int bound) const {
    std::vector<int> out;
    for (int k = 0; k <= bound; ++k)
      if (member(k)) out.push_back(k);
    return out;
  }
};

// Pullback of zeta_1^i zeta_2^j along tau -> (tau^s, tau^r).
inline LaurentPoly pullback_monomial(int r, int s, int i, int j) {
  if (i < 0 || j < 0) throw UsageError("pullback_monomial: exponents must be >= 0");
  return LaurentPoly::monomial(s * i + r * j);
}

}  // namespace koppel
