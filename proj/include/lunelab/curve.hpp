#pragma once

#include "lunelab/geom.hpp"
#include "lunelab/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace lunelab {

// closed PL curve on the torus; vertex coordinates are stored reduced mod 1.
// edges follow the minimal displacement convention: each coordinate step is
// the representative in (-1/2, 1/2].
struct TorusCurve {
  std::vector<Pt> vertices;
  bool closed = true;
  int orientation = 1;

  TorusCurve() = default;
  TorusCurve(std::vector<Pt> vs, bool cl = true, int orient = 1)
      : closed(cl), orientation(orient) {
    vertices.reserve(vs.size());
    for (auto& v : vs) vertices.push_back(reduce_mod_lattice(v));
    validate();
  }

  void validate() const {
    if (closed && vertices.size() < 3)
      throw std::invalid_argument("torus curve: closed curve needs >= 3 vertices");
    if (vertices.size() >= 2) {
      const std::size_t n = vertices.size();
      const std::size_t last = closed ? n : n - 1;
      for (std::size_t i = 0; i < last; ++i)
        if (vertices[i] == vertices[(i + 1) % n])
          throw std::invalid_argument("torus curve: zero-length segment");
    }
    if (orientation != 1 && orientation != -1)
      throw std::invalid_argument("torus curve: orientation must be +1 or -1");
  }
};

// minimal displacement between torus points, coordinates in (-1/2, 1/2]
inline Pt torus_step(const Pt& from, const Pt& to) {
  auto step1 = [](const Rat& a, const Rat& b) {
    Rat d = frac_part(b - a);
    if (d > Rat(1, 2)) d -= 1;
    return d;
  };
  return {step1(from.x, to.x), step1(from.y, to.y)};
}

// periodic properly embedded PL curve in the plane, materialized over a finite
// number of periods. parameter of vertex i is param_origin + i; points inside
// segment i carry the fractional part.
struct LiftedCurve {
  std::vector<Pt> verts;
  Pt period_vector;
  std::size_t per_period = 0;  // vertices advanced per period
  std::size_t periods = 0;
  Rat param_origin = Rat(0);

  std::size_t segment_count() const { return verts.empty() ? 0 : verts.size() - 1; }

  Rat param_min() const { return param_origin; }
  Rat param_max() const { return param_origin + Rat(BigInt(segment_count())); }

  Pt point_at(const Rat& param) const {
    const Rat rel = param - param_origin;
    if (rel < 0 || rel > Rat(BigInt(segment_count())))
      throw std::out_of_range("lifted curve: parameter outside materialized range");
    BigInt idx = rat_floor(rel);
    if (idx == BigInt(segment_count())) --idx;  // param at the very end
    const std::size_t i = idx.convert_to<std::size_t>();
    const Rat f = rel - Rat(idx);
    return verts[i] + f * (verts[i + 1] - verts[i]);
  }

  // direction of the segment containing the given parameter; at an interior
  // vertex the outgoing segment is used
  Pt tangent_at(const Rat& param) const {
    const Rat rel = param - param_origin;
    BigInt idx = rat_floor(rel);
    if (idx < 0 || idx >= BigInt(segment_count())) {
      if (idx == BigInt(segment_count()) && rel == Rat(idx)) --idx;
      else throw std::out_of_range("lifted curve: parameter outside materialized range");
    }
    const std::size_t i = idx.convert_to<std::size_t>();
    return verts[i + 1] - verts[i];
  }
};

// lift of a closed torus curve through a given base point, materialized over
// `periods` copies of the net translation
inline LiftedCurve lift_curve(const TorusCurve& c, const Pt& base, std::size_t periods) {
  if (!c.closed) throw std::invalid_argument("lift_curve: curve must be closed");
  if (periods == 0) throw std::invalid_argument("lift_curve: periods must be >= 1");
  const Pt base_red = reduce_mod_lattice(base);
  std::size_t start = c.vertices.size();
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    if (c.vertices[i] == base_red) { start = i; break; }
  if (start == c.vertices.size())
    throw std::invalid_argument("lift_curve: base does not project to a vertex of the curve");

  const std::size_t n = c.vertices.size();
  std::vector<Pt> steps;
  steps.reserve(n);
  Pt net(Rat(0), Rat(0));
  for (std::size_t k = 0; k < n; ++k) {
    const Pt& a = c.vertices[(start + k) % n];
    const Pt& b = c.vertices[(start + k + 1) % n];
    Pt d = torus_step(a, b);
    net = net + d;
    steps.push_back(std::move(d));
  }
  if (net.x == 0 && net.y == 0)
    throw std::invalid_argument("lift_curve: curve is null-homotopic, lift is not periodic");

  LiftedCurve lc;
  lc.period_vector = net;
  lc.per_period = n;
  lc.periods = periods;
  lc.verts.reserve(periods * n + 1);
  Pt cur = base;
  lc.verts.push_back(cur);
  for (std::size_t p = 0; p < periods; ++p) {
    for (std::size_t k = 0; k < n; ++k) {
      cur = cur + steps[k];
      lc.verts.push_back(cur);
    }
  }
  return lc;
}

// drop repeated points and merge collinear same-direction runs
inline std::vector<Pt> normalize_polyline(const std::vector<Pt>& in) {
  std::vector<Pt> out;
  for (const Pt& p : in) {
    if (!out.empty() && out.back() == p) continue;
    while (out.size() >= 2) {
      const Pt d1 = out.back() - out[out.size() - 2];
      const Pt d2 = p - out.back();
      if (cross(d1, d2) == 0 && dot(d1, d2) > 0) out.pop_back();
      else break;
    }
    out.push_back(p);
  }
  return out;
}

inline bool polyline_equal_normalized(const std::vector<Pt>& a, const std::vector<Pt>& b) {
  return normalize_polyline(a) == normalize_polyline(b);
}

namespace detail {

// corner cycle of a closed torus curve: vertices interior to straight runs are
// dropped and the outgoing run displacement is kept alongside each survivor.
// steps accumulate as merges happen; recomputing them from reduced endpoints
// would alias once a run exceeds half a period and strand interior vertices.
struct TorusCanonicalForm {
  std::vector<Pt> corners;  // reduced positions
  std::vector<Pt> runs;     // covering-plane displacement leaving corners[i]

  bool operator==(const TorusCanonicalForm&) const = default;
};

inline TorusCanonicalForm torus_canonical_form(const TorusCurve& c) {
  TorusCanonicalForm f;
  const std::size_t n = c.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    f.corners.push_back(reduce_mod_lattice(c.vertices[i]));
    f.runs.push_back(torus_step(c.vertices[i], c.vertices[(i + 1) % n]));
  }
  bool changed = true;
  while (changed && f.corners.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < f.corners.size(); ++i) {
      const std::size_t prev = (i + f.corners.size() - 1) % f.corners.size();
      if (cross(f.runs[prev], f.runs[i]) == 0 && dot(f.runs[prev], f.runs[i]) > 0) {
        f.runs[prev] = f.runs[prev] + f.runs[i];
        f.corners.erase(f.corners.begin() + (long)i);
        f.runs.erase(f.runs.begin() + (long)i);
        changed = true;
        break;
      }
    }
  }
  if (f.corners.size() == 1) {
    // straight closed geodesic: every vertex merged away, so the survivor is
    // representation noise. anchor the line where it crosses x = 0 (or y = 0
    // for meridians) at the least height instead.
    const Pt w = f.corners[0];
    const Pt net = f.runs[0];  // lattice vector, nonzero
    if (net.x == 0) {
      f.corners[0] = Pt(frac_part(w.x), Rat(0));
    } else {
      const Rat slope = net.y / net.x;
      const Rat base = frac_part(w.y - w.x * slope);
      const Rat gap = Rat(1, rat_den(slope));  // crossing heights are gap apart
      f.corners[0] = Pt(Rat(0), base - Rat(rat_floor(base / gap)) * gap);
    }
    return f;
  }
  // rotate to the lexicographically least (corner, run) sequence
  const std::size_t m = f.corners.size();
  auto rotation_less = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < m; ++k) {
      const Pt &ca = f.corners[(a + k) % m], &cb = f.corners[(b + k) % m];
      if (ca != cb) return lex_less(ca, cb);
      const Pt &ra = f.runs[(a + k) % m], &rb = f.runs[(b + k) % m];
      if (ra != rb) return lex_less(ra, rb);
    }
    return false;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (rotation_less(i, best)) best = i;
  std::rotate(f.corners.begin(), f.corners.begin() + (long)best, f.corners.end());
  std::rotate(f.runs.begin(), f.runs.begin() + (long)best, f.runs.end());
  return f;
}

}  // namespace detail

// canonical corner list of a closed torus curve: collinear vertices merged
// (cyclically), rotated so the lexicographically smallest corner is first
inline std::vector<Pt> torus_canonical_vertices(const TorusCurve& c) {
  return detail::torus_canonical_form(c).corners;
}

inline bool torus_curve_equal(const TorusCurve& a, const TorusCurve& b) {
  return a.orientation == b.orientation &&
         detail::torus_canonical_form(a) == detail::torus_canonical_form(b);
}

// a meridian {x0} x S^1 as a 3-vertex torus curve
inline TorusCurve meridian(const Rat& x0) {
  return TorusCurve({Pt(x0, Rat(0)), Pt(x0, Rat(1, 3)), Pt(x0, Rat(2, 3))});
}

}  // namespace lunelab
