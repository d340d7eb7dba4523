#pragma once

// Cutoff schedules and extrapolation of principal-value families
// F(delta_j) -> lim_{delta -> 0}.

#include <cmath>
#include <vector>

#include "types.hpp"

namespace koppel {

struct PVSchedule {
  std::vector<double> deltas;  // strictly decreasing, positive
  enum class Extrap { none, richardson } extrapolation = Extrap::none;
  double order = 1.0;  // leading exponent for richardson

  // delta_j = 2^{-j}, j = jmin..jmax.
  static PVSchedule dyadic(int jmin = 3, int jmax = 12,
                           Extrap mode = Extrap::none, double order = 1.0) {
    PVSchedule s;
    for (int j = jmin; j <= jmax; ++j) s.deltas.push_back(std::ldexp(1.0, -j));
    s.extrapolation = mode;
    s.order = order;
    return s;
  }

  void validate() const {
    if (deltas.empty()) throw UsageError("PVSchedule: empty delta sequence");
    double prev = -1;
    for (double d : deltas) {
      if (d <= 0) throw UsageError("PVSchedule: deltas must be positive");
      if (prev > 0 && d >= prev) throw UsageError("PVSchedule: deltas must decrease");
      prev = d;
    }
  }
};

struct SepResult {
  Cpx value{};
  double err_estimate = 0;
  double fitted_order = 0;  // measured leading exponent of the raw family
};

// Extrapolated limit of a cutoff family evaluated at the schedule's deltas.
// `richardson` runs iterated sweeps with exponents order, 2*order, 3*order;
// `none` returns the last value.  A tail whose successive differences grow
// is reported as divergence.
inline SepResult sep_regularize(std::vector<Cpx> family, const PVSchedule& sched) {
  sched.validate();
  if (family.size() != sched.deltas.size())
    throw UsageError("sep_regularize: family size does not match schedule");

  const std::size_t n = family.size();
  double scale = 0;
  for (const Cpx& v : family) scale = std::max(scale, std::abs(v));

  // Divergence check on the raw tail: the last three successive differences
  // must not be strictly increasing above noise.
  if (n >= 4) {
    double d1 = std::abs(family[n - 3] - family[n - 4]);
    double d2 = std::abs(family[n - 2] - family[n - 3]);
    double d3 = std::abs(family[n - 1] - family[n - 2]);
    double noise = 1e-13 * (scale + 1.0);
    if (d3 > noise && d3 > 1.5 * d2 && d2 > 1.5 * d1 && d2 > noise)
      throw DivergenceError("sep_regularize: non-Cauchy tail");
  }

  // Measured leading order from the final difference ratios (log2 since the
  // default schedule is dyadic; general ratios use the actual deltas).
  double fitted = 0;
  if (n >= 3) {
    double r1 = std::abs(family[n - 2] - family[n - 3]);
    double r2 = std::abs(family[n - 1] - family[n - 2]);
    double h = sched.deltas[n - 1] / sched.deltas[n - 2];
    if (r1 > 0 && r2 > 0 && h > 0 && h < 1) fitted = std::log(r2 / r1) / std::log(h);
  }

  if (sched.extrapolation == PVSchedule::Extrap::none || n < 2) {
    double err = (n >= 2) ? std::abs(family[n - 1] - family[n - 2]) : 0.0;
    return SepResult{family[n - 1], err, fitted};
  }

  std::vector<double> deltas = sched.deltas;
  std::vector<Cpx> cur = std::move(family);
  int sweeps = static_cast<int>(std::min<std::size_t>(3, cur.size() - 1));
  for (int k = 0; k < sweeps; ++k) {
    double p = sched.order * (k + 1);
    std::vector<Cpx> next(cur.size() - 1);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      double rho = std::pow(deltas[j + 1] / deltas[j], p);
      // eliminate the delta^p term between levels j and j+1
      next[j] = (cur[j + 1] - rho * cur[j]) / (1.0 - rho);
    }
    deltas.erase(deltas.begin());
    cur = std::move(next);
    if (cur.size() < 2) break;
  }
  double err = (cur.size() >= 2) ? std::abs(cur.back() - cur[cur.size() - 2]) : 0.0;
  return SepResult{cur.back(), err, fitted};
}

}  // namespace koppel
