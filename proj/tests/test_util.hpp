#pragma once

// Shared helpers for the unit tests: seeded generators producing dyadic
// (power-of-two) coefficients, so algebraic identities that should hold
// exactly really compare bit-for-bit.

#include <random>
#include <vector>

#include "koppel/exterior.hpp"
#include "koppel/types.hpp"

namespace testutil {

using koppel::Cpx;
using koppel::ExtForm;

// values +/- 2^k, k in [-2, 2]
inline Cpx dyadic(std::mt19937& rng) {
  std::uniform_int_distribution<int> expo(-2, 2);
  std::uniform_int_distribution<int> sign(0, 1);
  std::uniform_int_distribution<int> part(0, 2);
  double mag = std::ldexp(1.0, expo(rng));
  if (sign(rng)) mag = -mag;
  switch (part(rng)) {
    case 0: return Cpx{mag, 0};
    case 1: return Cpx{0, mag};
    default: return Cpx{mag, mag};
  }
}

inline ExtForm random_form(std::mt19937& rng, int dim, int terms) {
  std::uniform_int_distribution<int> blade(0, (1 << dim) - 1);
  ExtForm f(dim);
  for (int i = 0; i < terms; ++i) {
    unsigned eta = static_cast<unsigned>(blade(rng));
    unsigned bar = static_cast<unsigned>(blade(rng));
    f.add(koppel::blade_make(eta, bar), dyadic(rng));
  }
  return f;
}

// homogeneous of a fixed total degree, for graded sign laws
inline ExtForm random_homogeneous(std::mt19937& rng, int dim, int degree, int terms) {
  ExtForm f(dim);
  int tries = 0;
  while (terms > 0 && tries < 1000) {
    ++tries;
    std::uniform_int_distribution<int> blade(0, (1 << dim) - 1);
    unsigned eta = static_cast<unsigned>(blade(rng));
    unsigned bar = static_cast<unsigned>(blade(rng));
    koppel::Blade b = koppel::blade_make(eta, bar);
    if (koppel::blade_deg(b) != degree) continue;
    f.add(b, dyadic(rng));
    --terms;
  }
  return f;
}

inline bool identical(const ExtForm& a, const ExtForm& b) {
  return (a - b).max_abs() == 0.0;
}

}  // namespace testutil
