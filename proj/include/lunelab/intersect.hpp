#pragma once

#include "lunelab/curve.hpp"
#include "lunelab/geom.hpp"
#include "lunelab/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lunelab {

// transverse crossing of two PL curves
struct XPoint {
  Pt location;
  Rat param_a;
  Rat param_b;
  int sign = 0;  // sign of det(tangent_a, tangent_b)
};

struct DegenerateInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// orientation sign of the tangent frame at a transverse crossing
inline int intersection_sign(const Pt& tangent_a, const Pt& tangent_b) {
  const Rat d = cross(tangent_a, tangent_b);
  if (d == 0) throw std::invalid_argument("intersection_sign: parallel tangents");
  return d > 0 ? 1 : -1;
}

namespace detail {

enum class SegHit { none, proper, touch, overlap };

struct SegHitResult {
  SegHit kind = SegHit::none;
  Rat ta, tb;  // fractions along each segment for a proper hit
};

inline SegHitResult seg_seg_hit(const Pt& a0, const Pt& a1, const Pt& b0, const Pt& b1) {
  SegHitResult res;
  const Pt r = a1 - a0, s = b1 - b0;
  const Rat denom = cross(r, s);
  const Pt qp = b0 - a0;
  if (denom == 0) {
    if (cross(qp, r) != 0) return res;  // parallel, distinct lines
    // collinear: project onto r
    const Rat rr = dot(r, r);
    const Rat t0 = dot(qp, r) / rr;
    const Rat t1 = t0 + dot(s, r) / rr;
    const Rat lo = rat_min(t0, t1), hi = rat_max(t0, t1);
    if (hi < 0 || lo > 1) return res;
    if (hi == 0 || lo == 1) {
      res.kind = SegHit::touch;  // end-to-end contact
      return res;
    }
    res.kind = SegHit::overlap;
    return res;
  }
  const Rat ta = cross(qp, s) / denom;
  const Rat tb = cross(qp, r) / denom;
  if (ta < 0 || ta > 1 || tb < 0 || tb > 1) return res;
  if (ta == 0 || ta == 1 || tb == 0 || tb == 1) {
    res.kind = SegHit::touch;
    return res;
  }
  res.kind = SegHit::proper;
  res.ta = ta;
  res.tb = tb;
  return res;
}

// dense unit-cell grid over a window, for segment pair candidate generation
struct SegGrid {
  long cx0, cy0;
  std::size_t nx, ny;
  std::vector<std::vector<std::uint32_t>> cells;

  SegGrid(const Window& w) {
    cx0 = rat_floor(w.x_min).convert_to<long>() - 1;
    cy0 = rat_floor(w.y_min).convert_to<long>() - 1;
    const long cx1 = rat_floor(w.x_max).convert_to<long>() + 1;
    const long cy1 = rat_floor(w.y_max).convert_to<long>() + 1;
    nx = (std::size_t)(cx1 - cx0 + 1);
    ny = (std::size_t)(cy1 - cy0 + 1);
    cells.resize(nx * ny);
  }

  bool cell_range(const Pt& a, const Pt& b, long& x0, long& x1, long& y0, long& y1) const {
    x0 = rat_floor(rat_min(a.x, b.x)).convert_to<long>();
    x1 = rat_floor(rat_max(a.x, b.x)).convert_to<long>();
    y0 = rat_floor(rat_min(a.y, b.y)).convert_to<long>();
    y1 = rat_floor(rat_max(a.y, b.y)).convert_to<long>();
    if (x1 < cx0 || x0 > cx0 + (long)nx - 1 || y1 < cy0 || y0 > cy0 + (long)ny - 1)
      return false;
    x0 = std::max(x0, cx0);
    y0 = std::max(y0, cy0);
    x1 = std::min(x1, cx0 + (long)nx - 1);
    y1 = std::min(y1, cy0 + (long)ny - 1);
    return true;
  }

  void insert(const Pt& a, const Pt& b, std::uint32_t idx) {
    long x0, x1, y0, y1;
    if (!cell_range(a, b, x0, x1, y0, y1)) return;
    for (long x = x0; x <= x1; ++x)
      for (long y = y0; y <= y1; ++y)
        cells[(std::size_t)(x - cx0) * ny + (std::size_t)(y - cy0)].push_back(idx);
  }

  void gather(const Pt& a, const Pt& b, std::vector<std::uint32_t>& out) const {
    out.clear();
    long x0, x1, y0, y1;
    if (!cell_range(a, b, x0, x1, y0, y1)) return;
    for (long x = x0; x <= x1; ++x)
      for (long y = y0; y <= y1; ++y) {
        const auto& c = cells[(std::size_t)(x - cx0) * ny + (std::size_t)(y - cy0)];
        out.insert(out.end(), c.begin(), c.end());
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
};

inline std::string seg_label(const char* curve, std::size_t i, const Pt& a, const Pt& b) {
  return std::string(curve) + "[" + std::to_string(i) + "] (" + format_rat(a.x) + "," +
         format_rat(a.y) + ")-(" + format_rat(b.x) + "," + format_rat(b.y) + ")";
}

}  // namespace detail

// all transverse crossings of a and b inside w, sorted lexicographically by
// location. any touch, tangency or collinear overlap raises
// DegenerateInputError naming the offending segments.
inline std::vector<XPoint> intersect_curves(const LiftedCurve& a, const LiftedCurve& b,
                                            const Window& w) {
  detail::SegGrid grid(w);
  const std::size_t nb = b.segment_count();
  for (std::size_t j = 0; j < nb; ++j)
    grid.insert(b.verts[j], b.verts[j + 1], (std::uint32_t)j);

  std::vector<XPoint> out;
  std::vector<std::uint32_t> cand;
  const std::size_t na = a.segment_count();
  for (std::size_t i = 0; i < na; ++i) {
    const Pt& a0 = a.verts[i];
    const Pt& a1 = a.verts[i + 1];
    grid.gather(a0, a1, cand);
    for (const std::uint32_t j : cand) {
      const Pt& b0 = b.verts[j];
      const Pt& b1 = b.verts[j + 1];
      const auto hit = detail::seg_seg_hit(a0, a1, b0, b1);
      switch (hit.kind) {
        case detail::SegHit::none:
          break;
        case detail::SegHit::touch:
          throw DegenerateInputError(
              "intersection at a segment endpoint: " + detail::seg_label("a", i, a0, a1) +
              " vs " + detail::seg_label("b", j, b0, b1));
        case detail::SegHit::overlap:
          throw DegenerateInputError(
              "collinear overlap: " + detail::seg_label("a", i, a0, a1) + " vs " +
              detail::seg_label("b", j, b0, b1));
        case detail::SegHit::proper: {
          XPoint x;
          x.location = a0 + hit.ta * (a1 - a0);
          if (!w.contains(x.location)) break;
          x.param_a = a.param_origin + Rat(BigInt(i)) + hit.ta;
          x.param_b = b.param_origin + Rat(BigInt(j)) + hit.tb;
          x.sign = intersection_sign(a1 - a0, b1 - b0);
          out.push_back(std::move(x));
          break;
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const XPoint& p, const XPoint& q) {
    return lex_less(p.location, q.location);
  });
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i].location == out[i + 1].location)
      throw DegenerateInputError("coincident crossings at (" +
                                 format_rat(out[i].location.x) + "," +
                                 format_rat(out[i].location.y) + ")");
  return out;
}

}  // namespace lunelab
