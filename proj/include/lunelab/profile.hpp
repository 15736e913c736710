#pragma once

#include "lunelab/geom.hpp"
#include "lunelab/rational.hpp"

#include <stdexcept>
#include <vector>

namespace lunelab {

// derivative profile rho of the displacement Hamiltonian, piecewise linear on S^1.
// breakpoints hold one period's corner positions in [0,1); values are rho there.
// between consecutive breakpoints (cyclically) rho interpolates linearly.
struct Profile {
  std::vector<Rat> breakpoints;
  std::vector<Rat> values;
  Rat epsilon;
};

// rho = +4 on [e, 1/4-e], 0 on [1/4+e, 1/2-e], -4 on [1/2+e, 3/4-e],
// 0 on [3/4+e, 1-e], with linear ramps of width 2e at 0, 1/4, 1/2, 3/4
inline Profile make_profile(const Rat& epsilon) {
  if (!(epsilon > 0 && epsilon < Rat(1, 8)))
    throw std::invalid_argument("make_profile: epsilon must lie in (0, 1/8)");
  Profile p;
  p.epsilon = epsilon;
  const Rat e = epsilon;
  p.breakpoints = {e,          Rat(1, 4) - e, Rat(1, 4) + e, Rat(1, 2) - e,
                   Rat(1, 2) + e, Rat(3, 4) - e, Rat(3, 4) + e, Rat(1) - e};
  p.values = {4, 4, 0, 0, -4, -4, 0, 0};
  return p;
}

inline Rat rho_at(const Profile& p, const Rat& y) {
  const Rat u = frac_part(y);
  const std::size_t n = p.breakpoints.size();
  // locate the cyclic interval [bp[i], bp[i+1]) containing u
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (u >= p.breakpoints[i] && u <= p.breakpoints[i + 1]) {
      const Rat span = p.breakpoints[i + 1] - p.breakpoints[i];
      if (span == 0) return p.values[i];
      const Rat f = (u - p.breakpoints[i]) / span;
      return p.values[i] + f * (p.values[i + 1] - p.values[i]);
    }
  }
  // wrap interval [bp[n-1], bp[0]+1)
  Rat uu = u;
  if (uu < p.breakpoints[n - 1]) uu += 1;
  const Rat span = p.breakpoints[0] + 1 - p.breakpoints[n - 1];
  const Rat f = (uu - p.breakpoints[n - 1]) / span;
  return p.values[n - 1] + f * (p.values[0] - p.values[n - 1]);
}

// exact integral of rho over one period (trapezoid sums over the linear pieces)
inline Rat profile_integral(const Profile& p) {
  Rat total(0);
  const std::size_t n = p.breakpoints.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    Rat span = p.breakpoints[j] - p.breakpoints[i];
    if (j == 0) span += 1;
    total += span * (p.values[i] + p.values[j]) / 2;
  }
  return total;
}

// oscillation (max - min) of the antiderivative over one period.
// the antiderivative is monotone between sign changes of rho, and rho only
// changes sign at breakpoints, so cumulative trapezoid values at breakpoints
// contain the extrema.
inline Rat antiderivative_oscillation(const Profile& p) {
  const std::size_t n = p.breakpoints.size();
  Rat acc(0), lo(0), hi(0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    Rat span = p.breakpoints[j] - p.breakpoints[i];
    if (j == 0) span += 1;
    acc += span * (p.values[i] + p.values[j]) / 2;
    if (acc < lo) lo = acc;
    if (acc > hi) hi = acc;
  }
  return hi - lo;
}

}  // namespace lunelab
