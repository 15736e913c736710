#pragma once

#include "lunelab/curve.hpp"
#include "lunelab/geom.hpp"
#include "lunelab/profile.hpp"
#include "lunelab/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace lunelab {

enum class Axis { horizontal, vertical };

// vertical: (x, y) -> (x, y + time * rho(x)); horizontal: (x, y) -> (x + time * rho(y), y)
struct ShearMap {
  Axis axis;
  Rat time;
  Profile profile;
};

inline ShearMap vertical_shear(const Rat& time, const Profile& p) {
  return {Axis::vertical, time, p};
}
inline ShearMap horizontal_shear(const Rat& time, const Profile& p) {
  return {Axis::horizontal, time, p};
}

inline bool profiles_equal(const Profile& a, const Profile& b) {
  return a.epsilon == b.epsilon && a.breakpoints == b.breakpoints && a.values == b.values;
}

inline ShearMap compose_flow_times(const ShearMap& m1, const ShearMap& m2) {
  if (m1.axis != m2.axis)
    throw std::invalid_argument("compose_flow_times: mismatched axis");
  if (!profiles_equal(m1.profile, m2.profile))
    throw std::invalid_argument("compose_flow_times: mismatched profile");
  return {m1.axis, m1.time + m2.time, m1.profile};
}

inline Pt shear_point(const Pt& p, const ShearMap& m) {
  if (m.axis == Axis::vertical) return {p.x, p.y + m.time * rho_at(m.profile, p.x)};
  return {p.x + m.time * rho_at(m.profile, p.y), p.y};
}

namespace detail {

// fractions in (0,1) where the driving coordinate crosses a profile breakpoint
// (mod 1) along the segment from c0 to c1
inline std::vector<Rat> breakpoint_fractions(const Rat& c0, const Rat& c1,
                                             const Profile& prof) {
  std::vector<Rat> fr;
  if (c0 == c1) return fr;
  const Rat lo = rat_min(c0, c1), hi = rat_max(c0, c1);
  for (const Rat& bp : prof.breakpoints) {
    for (BigInt k = rat_ceil(lo - bp); Rat(k) + bp <= hi; ++k) {
      const Rat v = Rat(k) + bp;
      if (v > lo && v < hi) fr.push_back((v - c0) / (c1 - c0));
    }
  }
  std::sort(fr.begin(), fr.end());
  fr.erase(std::unique(fr.begin(), fr.end()), fr.end());
  return fr;
}

// subdivide then map: the image of each sub-segment is straight because rho is
// linear between breakpoints
inline void emit_sheared_segment(const Pt& a, const Pt& b, const ShearMap& m,
                                 std::vector<Pt>& out) {
  const bool vert = m.axis == Axis::vertical;
  const Rat c0 = vert ? a.x : a.y;
  const Rat c1 = vert ? b.x : b.y;
  for (const Rat& f : breakpoint_fractions(c0, c1, m.profile))
    out.push_back(shear_point(a + f * (b - a), m));
  out.push_back(shear_point(b, m));
}

}  // namespace detail

inline LiftedCurve apply_shear(const LiftedCurve& c, const ShearMap& m) {
  LiftedCurve out;
  out.period_vector = c.period_vector;
  out.periods = c.periods;
  out.param_origin = Rat(0);
  if (c.verts.empty()) return out;
  out.verts.push_back(shear_point(c.verts[0], m));
  for (std::size_t i = 0; i + 1 < c.verts.size(); ++i)
    detail::emit_sheared_segment(c.verts[i], c.verts[i + 1], m, out.verts);
  if (c.periods > 0 && (out.verts.size() - 1) % c.periods == 0)
    out.per_period = (out.verts.size() - 1) / c.periods;
  return out;
}

inline TorusCurve apply_shear(const TorusCurve& c, const ShearMap& m) {
  if (!c.closed) throw std::invalid_argument("apply_shear: torus curve must be closed");
  const std::size_t n = c.vertices.size();
  std::vector<Pt> img;
  for (std::size_t i = 0; i < n; ++i) {
    const Pt a = c.vertices[i];
    const Pt b = a + torus_step(c.vertices[i], c.vertices[(i + 1) % n]);
    const bool vert = m.axis == Axis::vertical;
    const Rat c0 = vert ? a.x : a.y;
    const Rat c1 = vert ? b.x : b.y;
    std::vector<Rat> fr = detail::breakpoint_fractions(c0, c1, m.profile);
    fr.insert(fr.begin(), Rat(0));
    fr.push_back(Rat(1));
    // image pieces can wrap several periods; cut them until every emitted edge
    // is a strict minimal step, so the vertex list determines the curve
    for (std::size_t k = 0; k + 1 < fr.size(); ++k) {
      const Pt p0 = shear_point(a + fr[k] * (b - a), m);
      const Pt p1 = shear_point(a + fr[k + 1] * (b - a), m);
      const Pt d = p1 - p0;
      const Rat span = rat_max(rat_abs(d.x), rat_abs(d.y));
      const long pieces = rat_floor(2 * span).convert_to<long>() + 1;
      for (long j = 0; j < pieces; ++j)
        img.push_back(reduce_mod_lattice(p0 + (Rat(j) / Rat(pieces)) * d));
    }
  }
  // shear images can repeat points where rho ramps meet; strip exact repeats
  std::vector<Pt> cleaned;
  for (const Pt& p : img)
    if (cleaned.empty() || cleaned.back() != p) cleaned.push_back(p);
  while (cleaned.size() > 1 && cleaned.front() == cleaned.back()) cleaned.pop_back();
  TorusCurve out;
  out.vertices = std::move(cleaned);
  out.closed = true;
  out.orientation = c.orientation;
  out.validate();
  return out;
}

// shear of a plain polygon (vertex-by-vertex with subdivision), used for exact
// area-preservation checks
inline std::vector<Pt> apply_shear_polygon(const std::vector<Pt>& poly, const ShearMap& m) {
  std::vector<Pt> out;
  if (poly.empty()) return out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& a = poly[i];
    const Pt& b = poly[(i + 1) % n];
    out.push_back(shear_point(a, m));
    const bool vert = m.axis == Axis::vertical;
    const Rat c0 = vert ? a.x : a.y;
    const Rat c1 = vert ? b.x : b.y;
    for (const Rat& f : detail::breakpoint_fractions(c0, c1, m.profile))
      out.push_back(shear_point(a + f * (b - a), m));
  }
  return out;
}

// closed form for the commutator norm upper bound: conjugation invariance plus
// the generator costs gives 2 * min(s, t) * oscillation
inline Rat hofer_upper_bound(const Rat& s, const Rat& t, const Rat& oscillation) {
  if (!(s > 0 && t > 0))
    throw std::invalid_argument("hofer_upper_bound: s and t must be positive");
  return 2 * rat_min(s, t) * oscillation;
}

}  // namespace lunelab
