#pragma once

#include "lunelab/curve.hpp"
#include "lunelab/geom.hpp"
#include "lunelab/intersect.hpp"
#include "lunelab/lune.hpp"
#include "lunelab/profile.hpp"
#include "lunelab/rational.hpp"
#include "lunelab/shear.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lunelab {

struct ScenarioConfig {
  std::string name = "scenario";
  Rat epsilon = Rat(1, 100);
  Rat s = Rat(3);
  Rat t = Rat(2001, 1000);
  std::optional<Window> window;  // default: square of half-width 4*max(s,t)+2
  std::vector<Pt> marked_points;
  Rat perturbation_delta = Rat(1, 1000);
};

inline void validate_config(const ScenarioConfig& cfg) {
  if (!(cfg.epsilon > 0) || !(cfg.epsilon < Rat(1, 8)))
    throw std::invalid_argument("scenario: epsilon must lie in (0, 1/8)");
  if (!(cfg.s > 0) || !(cfg.t > 0))
    throw std::invalid_argument("scenario: flow times must be positive");
  if (cfg.perturbation_delta < 0)
    throw std::invalid_argument("scenario: perturbation delta must be nonnegative");
}

inline Window default_window(const Rat& s, const Rat& t) {
  const Rat half = 4 * rat_max(s, t) + 2;
  return Window{-half, half, -half, half};
}

// the built configuration: two vertical torus circles, their plane lifts, the
// sheared images, every transverse crossing in the window, and the corner
// nearest the y axis (ties broken toward the x axis, then lexicographically)
struct Scenario {
  ScenarioConfig config;
  Profile profile;
  Window window;
  TorusCurve L, Lp;
  LiftedCurve A;  // horizontal-shear image of the lift of L
  LiftedCurve B;  // vertical-then-horizontal-shear image of the lift of Lp
  std::vector<XPoint> crossings;      // inside the window
  std::vector<XPoint> crossings_all;  // wherever the lifts reach
  XPoint p;
};

namespace detail {

inline TorusCurve vertical_circle(const Rat& x0) { return meridian(x0); }

inline long ifloor(const Rat& q) { return rat_floor(q).convert_to<long>(); }
inline long iceil(const Rat& q) { return rat_ceil(q).convert_to<long>(); }

}  // namespace detail

inline Scenario build_scenario(const ScenarioConfig& cfg) {
  validate_config(cfg);
  Scenario sc;
  sc.config = cfg;
  sc.profile = make_profile(cfg.epsilon);
  sc.window = cfg.window ? *cfg.window : default_window(cfg.s, cfg.t);

  const Rat x_l = 1 - 2 * cfg.epsilon;
  const Rat x_lp = 1 - cfg.epsilon;
  sc.L = detail::vertical_circle(x_l);
  sc.Lp = detail::vertical_circle(x_lp);

  const ShearMap g_s = horizontal_shear(cfg.s, sc.profile);
  const ShearMap f_t = vertical_shear(cfg.t, sc.profile);

  // the horizontal shear keeps y, so the lift of L only needs the window rows
  const long y_lo = detail::ifloor(sc.window.y_min) - 1;
  const long y_hi = detail::iceil(sc.window.y_max) + 1;
  LiftedCurve lift_l = lift_curve(sc.L, Pt{x_l, Rat(y_lo)}, (std::size_t)(y_hi - y_lo));
  sc.A = apply_shear(lift_l, g_s);

  // the vertical shear then moves points by at most 4t in y
  const long pad = detail::iceil(4 * cfg.t) + 1;
  LiftedCurve lift_lp = lift_curve(sc.Lp, Pt{x_lp, Rat(y_lo - pad)},
                                   (std::size_t)(y_hi - y_lo + 2 * pad));
  sc.B = apply_shear(apply_shear(lift_lp, g_s), f_t);

  sc.crossings_all = all_crossings(sc.A, sc.B);
  for (const XPoint& x : sc.crossings_all)
    if (sc.window.contains(x.location)) sc.crossings.push_back(x);
  if (sc.crossings.empty())
    throw std::runtime_error("scenario: no crossings inside the window");

  const XPoint* best = &sc.crossings.front();
  for (const XPoint& x : sc.crossings) {
    const Rat ax = rat_abs(x.location.x), bx = rat_abs(best->location.x);
    if (ax != bx) {
      if (ax < bx) best = &x;
      continue;
    }
    const Rat ay = rat_abs(x.location.y), by = rat_abs(best->location.y);
    if (ay != by) {
      if (ay < by) best = &x;
      continue;
    }
    if (lex_less(x.location, best->location)) best = &x;
  }
  sc.p = *best;
  return sc;
}

}  // namespace lunelab
