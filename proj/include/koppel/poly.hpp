#pragma once

// Holomorphic polynomials in (zeta_1..zeta_3, z_1..z_3), exponents in a
// 6-slot key.  Small and exact; used for hypersurface equations, Hefer
// components and test fields.  No conjugated variables here.

#include <array>
#include <cstdint>
#include <map>

#include "types.hpp"

namespace koppel {

class Poly {
 public:
  using Key = std::array<std::uint8_t, 6>;  // zeta exponents 0..2, z exponents 3..5

  Poly() = default;

  static Poly constant(Cpx c) {
    Poly p;
    if (c != Cpx{}) p.t_[Key{}] = c;
    return p;
  }
  static Poly zeta(int j, int power = 1) { return monomial(j - 1, power); }
  static Poly zvar(int j, int power = 1) { return monomial(j + 2, power); }

  static Poly monomial_key(const Key& k, Cpx c) {
    Poly p;
    if (c != Cpx{}) p.t_[k] = c;
    return p;
  }

  bool empty() const { return t_.empty(); }

  Poly& operator+=(const Poly& o) {
    for (const auto& [k, c] : o.t_) {
      auto it = t_.find(k);
      if (it == t_.end())
        t_[k] = c;
      else {
        it->second += c;
        if (it->second == Cpx{}) t_.erase(it);
      }
    }
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a += b * Cpx{-1, 0}; }

  friend Poly operator*(const Poly& a, Cpx s) {
    Poly out;
    if (s == Cpx{}) return out;
    for (const auto& [k, c] : a.t_) out.t_[k] = c * s;
    return out;
  }
  friend Poly operator*(Cpx s, const Poly& a) { return a * s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) {
        Key k{};
        for (int i = 0; i < 6; ++i) k[i] = static_cast<std::uint8_t>(ka[i] + kb[i]);
        auto it = out.t_.find(k);
        if (it == out.t_.end())
          out.t_[k] = ca * cb;
        else {
          it->second += ca * cb;
          if (it->second == Cpx{}) out.t_.erase(it);
        }
      }
    return out;
  }

  Poly pow(int n) const {
    Poly out = constant(Cpx{1, 0});
    for (int i = 0; i < n; ++i) out = out * (*this);
    return out;
  }

  Cpx eval(const Pt& zeta, const Pt& z = Pt{}) const {
    Cpx sum{};
    for (const auto& [k, c] : t_) {
      Cpx term = c;
      for (int i = 0; i < 3; ++i)
        for (int e = 0; e < k[i]; ++e) term *= zeta[i];
      for (int i = 0; i < 3; ++i)
        for (int e = 0; e < k[i + 3]; ++e) term *= z[i];
      sum += term;
    }
    return sum;
  }

  // d/d(var), var in 0..5 with the same slot convention as Key.
  Poly partial(int var) const {
    Poly out;
    for (const auto& [k, c] : t_) {
      if (k[var] == 0) continue;
      Key kk = k;
      kk[var] -= 1;
      out.t_[kk] += c * Cpx(static_cast<double>(k[var]), 0);
      if (out.t_[kk] == Cpx{}) out.t_.erase(kk);
    }
    return out;
  }
  Poly partial_zeta(int j) const { return partial(j - 1); }

  bool depends_on_z() const {
    for (const auto& [k, c] : t_) {
      (void)c;
      if (k[3] || k[4] || k[5]) return true;
    }
    return false;
  }

  const std::map<Key, Cpx>& terms() const { return t_; }

 private:
  static Poly monomial(int slot, int power) {
    Key k{};
    k[slot] = static_cast<std::uint8_t>(power);
    Poly p;
    p.t_[k] = Cpx{1, 0};
    return p;
  }

  std::map<Key, Cpx> t_;
};

}  // namespace koppel
