#pragma once

// Fixed smooth cutoff profiles with closed-form first derivatives.  The
// transition is the C^2 quintic smoothstep, so dbar of a cutoff is exact up
// to the chain rule and every run sees the same profile.

#include "types.hpp"

namespace koppel {

namespace smoothstep {
inline double s(double u) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}
inline double ds(double u) {
  if (u <= 0 || u >= 1) return 0;
  double w = u * (1.0 - u);
  return 30.0 * w * w;
}
}  // namespace smoothstep

// 1 on t <= t0, 0 on t >= t1 (t is usually |zeta|^2).
struct BumpProfile {
  double t0 = 1.0;
  double t1 = 2.0;

  double operator()(double t) const {
    return 1.0 - smoothstep::s((t - t0) / (t1 - t0));
  }
  double deriv(double t) const {
    return -smoothstep::ds((t - t0) / (t1 - t0)) / (t1 - t0);
  }
};

// 0 on t <= t0, 1 on t >= t1; the smooth approximand of the characteristic
// function of [1, infinity) used in cutoff regularizations chi(|h|/delta).
struct StepProfile {
  double t0 = 1.0;
  double t1 = 2.0;

  double operator()(double t) const {
    return smoothstep::s((t - t0) / (t1 - t0));
  }
  double deriv(double t) const {
    return smoothstep::ds((t - t0) / (t1 - t0)) / (t1 - t0);
  }
};

}  // namespace koppel
