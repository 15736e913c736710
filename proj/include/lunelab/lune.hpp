#pragma once

#include "lunelab/arrangement.hpp"
#include "lunelab/curve.hpp"
#include "lunelab/geom.hpp"
#include "lunelab/intersect.hpp"
#include "lunelab/parallel.hpp"
#include "lunelab/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lunelab {

enum class LuneDirection { p_to_q, q_to_p };

struct LuneCertificate {
  XPoint endpoint_p, endpoint_q;
  Arc gamma;        // on the first curve
  Arc gamma_prime;  // on the second curve
  FaceTable face_table;
  Rat energy;
  LuneDirection direction = LuneDirection::p_to_q;
  std::optional<char> label;
  bool homotopy_by_simple_connectivity = true;  // condition (2) holds in the plane
};

enum class LuneReject {
  opposite_signs,     // condition (1) fails
  negative_face,      // condition (3): some face winding < 0
  endpoint_winding,   // condition (3): corner face winding outside {0,1}
  zero_energy,
};

struct Rejection {
  LuneReject reason;
  std::string detail;
};

struct SigmaP {
  std::optional<Rat> value;  // empty means +infinity
  std::vector<LuneCertificate> witnesses;
  std::optional<Window> window_used;
  bool complete_in_window = false;
};

// unique parameter-interval arc between two crossing parameters on one curve
inline Arc arcs_between(const LiftedCurve& c, const Rat& param_p, const Rat& param_q) {
  if (param_p == param_q) throw std::invalid_argument("arcs_between: degenerate arc (p == q)");
  if (param_p < c.param_min() || param_p > c.param_max() || param_q < c.param_min() ||
      param_q > c.param_max())
    throw std::out_of_range("arcs_between: parameter not on the materialized curve");
  return Arc{&c, param_p, param_q};
}

inline Arc arcs_between(const LiftedCurve& c, const XPoint& p, const XPoint& q, bool on_first) {
  return arcs_between(c, on_first ? p.param_a : p.param_b, on_first ? q.param_a : q.param_b);
}

namespace detail {

inline XPoint make_endpoint(const LiftedCurve& a, const LiftedCurve& b, const Rat& pa,
                            const Rat& pb) {
  XPoint x;
  x.location = a.point_at(pa);
  x.param_a = pa;
  x.param_b = pb;
  x.sign = intersection_sign(a.tangent_at(pa), b.tangent_at(pb));
  return x;
}

}  // namespace detail

// the lune criterion on a pair of arcs sharing both endpoints:
// (1) opposite intersection indices at the two corners,
// (2) relative homotopy, automatic in the plane,
// (3) winding of the closed loop gamma * -gamma_prime nonnegative everywhere
//     and in {0,1} beside both corners; energy is the winding-weighted area.
inline std::variant<LuneCertificate, Rejection> check_lune(const Arc& gamma,
                                                           const Arc& gamma_prime,
                                                           LuneDirection direction) {
  const LiftedCurve& A = *gamma.curve;
  const LiftedCurve& B = *gamma_prime.curve;
  const XPoint ep = detail::make_endpoint(A, B, gamma.param_start, gamma_prime.param_start);
  const XPoint eq = detail::make_endpoint(A, B, gamma.param_end, gamma_prime.param_end);
  if (ep.sign == eq.sign)
    return Rejection{LuneReject::opposite_signs,
                     "corners have equal intersection index " + std::to_string(ep.sign)};

  Arc g = gamma, gp = gamma_prime;
  if (direction == LuneDirection::q_to_p) {
    std::swap(g.param_start, g.param_end);
    std::swap(gp.param_start, gp.param_end);
  }
  FaceTable ft = build_face_table(g, gp);

  for (const Face& f : ft.faces)
    if (f.bounded && f.winding < 0)
      return Rejection{LuneReject::negative_face,
                       "face with winding " + std::to_string(f.winding)};
  for (const Pt& corner : {ep.location, eq.location})
    for (const int w : incident_windings(ft, corner))
      if (w != 0 && w != 1)
        return Rejection{LuneReject::endpoint_winding,
                         "corner face winding " + std::to_string(w)};

  const Rat energy = winding_area(ft);
  if (!(energy > 0)) return Rejection{LuneReject::zero_energy, "winding area is zero"};

  LuneCertificate cert;
  cert.endpoint_p = ep;
  cert.endpoint_q = eq;
  cert.gamma = gamma;
  cert.gamma_prime = gamma_prime;
  cert.face_table = std::move(ft);
  cert.energy = energy;
  cert.direction = direction;
  return cert;
}

namespace detail {

// per-curve acceleration structures shared by the enumeration filters:
// prefix cross sums for O(1) arc shoelace, and unit column/row segment lists
// (sorted by segment index) for axis ray casts restricted to an arc
struct CurveIndex {
  const LiftedCurve* c = nullptr;
  Rat org;  // vertex i sits at parameter org + i
  std::vector<Rat> prefix;  // prefix[i] = sum of cross(v_k, v_{k+1}) for k < i
  long col0 = 0, row0 = 0;
  std::vector<std::vector<std::uint32_t>> cols, rows;

  explicit CurveIndex(const LiftedCurve& curve) : c(&curve), org(curve.param_origin) {
    const std::size_t n = curve.segment_count();
    prefix.resize(n + 1);
    prefix[0] = 0;
    for (std::size_t i = 0; i < n; ++i)
      prefix[i + 1] = prefix[i] + cross(curve.verts[i], curve.verts[i + 1]);
    BBox bb;
    for (const Pt& p : curve.verts) bb.add(p);
    col0 = rat_floor(bb.x_min).convert_to<long>();
    row0 = rat_floor(bb.y_min).convert_to<long>();
    const long c1 = rat_floor(bb.x_max).convert_to<long>();
    const long r1 = rat_floor(bb.y_max).convert_to<long>();
    cols.resize((std::size_t)(c1 - col0 + 1));
    rows.resize((std::size_t)(r1 - row0 + 1));
    for (std::size_t i = 0; i < n; ++i) {
      const Pt& a = curve.verts[i];
      const Pt& b = curve.verts[i + 1];
      const long x0 = rat_floor(rat_min(a.x, b.x)).convert_to<long>();
      const long x1 = rat_floor(rat_max(a.x, b.x)).convert_to<long>();
      const long y0 = rat_floor(rat_min(a.y, b.y)).convert_to<long>();
      const long y1 = rat_floor(rat_max(a.y, b.y)).convert_to<long>();
      for (long x = x0; x <= x1; ++x) cols[(std::size_t)(x - col0)].push_back((std::uint32_t)i);
      for (long y = y0; y <= y1; ++y) rows[(std::size_t)(y - row0)].push_back((std::uint32_t)i);
    }
  }

  // cross-product sum along the arc from parameter a to b (b < a gives the negative)
  Rat arc_cross_sum(const Rat& a, const Rat& b) const {
    if (a == b) return Rat(0);
    if (b < a) return -arc_cross_sum(b, a);
    const BigInt ia = rat_floor(a - org), ib = rat_floor(b - org);
    const Pt pa = c->point_at(a), pb = c->point_at(b);
    if (ia == ib || (ib == ia + 1 && Rat(ib) == b - org))
      return cross(pa, pb);
    const std::size_t sa = ia.convert_to<std::size_t>();
    const std::size_t sb = ib.convert_to<std::size_t>();
    Rat total = cross(pa, c->verts[sa + 1]);
    total += prefix[sb] - prefix[sa + 1];
    total += cross(c->verts[sb], pb);
    return total;
  }
};

// one oriented arc of the candidate loop
struct LoopArc {
  const CurveIndex* idx;
  Rat lo, hi;  // normalized parameter interval, lo < hi
  int mult;    // +1 when the loop traverses with increasing parameter
};

// signed crossing of segment u->v (traversal orientation applied) with the open
// ray from c in direction d. requires no endpoint exactly on the ray; returns
// false via `dirty` when that assumption fails.
struct RayCast {
  Pt c, d;
  int count = 0;
  bool dirty = false;

  void add_segment(const Pt& u, const Pt& v, int mult) {
    if (dirty) return;
    const Rat su = cross(d, u - c);
    const Rat sv = cross(d, v - c);
    if (su == 0 || sv == 0) {
      // an endpoint on the ray line: only dirty when it sits on the open ray
      // or the segment is collinear with it
      auto on_open_ray = [&](const Pt& w, const Rat& s) {
        return s == 0 && dot(d, w - c) > 0;
      };
      if (on_open_ray(u, su) || on_open_ray(v, sv)) {
        dirty = true;
        return;
      }
      if (su == 0 && sv == 0) return;  // collinear behind the origin
    }
    if ((su > 0 && sv > 0) || (su < 0 && sv < 0) || su == 0 || sv == 0) return;
    // strict straddle: crossing parameter must be positive
    const Pt e = v - u;
    const Rat tau_num = cross(u - c, e);
    const Rat tau_den = cross(d, e);
    if (tau_num == 0) return;  // passes through the origin: corner edges
    if ((tau_num > 0) != (tau_den > 0)) return;
    count += ((su < 0) ? 1 : -1) * mult;  // right-to-left passage is +1
  }
};

inline void cast_over_range(RayCast& rc, const CurveIndex& idx, const Rat& lo, const Rat& hi,
                            int mult, const std::vector<std::uint32_t>& segs) {
  const LiftedCurve& c = *idx.c;
  const Rat rlo = lo - idx.org, rhi = hi - idx.org;
  // segment lists are ascending, so clamp to the arc's index range up front
  const std::uint32_t i_lo = (std::uint32_t)std::max<long>(0, rat_floor(rlo).convert_to<long>());
  auto it = std::lower_bound(segs.begin(), segs.end(), i_lo);
  for (; it != segs.end(); ++it) {
    const std::uint32_t i = *it;
    if (rc.dirty) return;
    if (Rat(BigInt(i)) >= rhi) return;
    if (Rat(BigInt(i)) + 1 <= rlo) continue;
    Pt u = c.verts[i], v = c.verts[i + 1];
    if (rlo > Rat(BigInt(i)) && rlo < Rat(BigInt(i)) + 1) u = c.point_at(lo);
    if (rhi > Rat(BigInt(i)) && rhi < Rat(BigInt(i)) + 1) v = c.point_at(hi);
    rc.add_segment(u, v, mult);
  }
}

// crossing count for an axis-aligned ray using the column/row lists; falls back
// to a full arc scan for general directions
inline std::optional<int> cast_ray(const Pt& corner, const Pt& d,
                                   const std::vector<LoopArc>& arcs) {
  RayCast rc;
  rc.c = corner;
  rc.d = d;
  const bool axis_x = (d.y == 0);
  const bool axis_y = (d.x == 0);
  for (const LoopArc& la : arcs) {
    const CurveIndex& idx = *la.idx;
    if (axis_y) {
      const long col = rat_floor(corner.x).convert_to<long>();
      if (col < idx.col0 || col >= idx.col0 + (long)idx.cols.size()) continue;
      cast_over_range(rc, idx, la.lo, la.hi, la.mult, idx.cols[(std::size_t)(col - idx.col0)]);
    } else if (axis_x) {
      const long row = rat_floor(corner.y).convert_to<long>();
      if (row < idx.row0 || row >= idx.row0 + (long)idx.rows.size()) continue;
      cast_over_range(rc, idx, la.lo, la.hi, la.mult, idx.rows[(std::size_t)(row - idx.row0)]);
    } else {
      // general direction: walk every segment of the arc
      const LiftedCurve& c = *idx.c;
      const Rat rlo = la.lo - idx.org, rhi = la.hi - idx.org;
      const std::size_t s0 = rat_floor(rlo).convert_to<std::size_t>();
      const std::size_t s1 = std::min((std::size_t)rat_ceil(rhi).convert_to<long>(),
                                      c.segment_count());
      for (std::size_t i = s0; i < s1 && !rc.dirty; ++i) {
        Pt u = c.verts[i], v = c.verts[i + 1];
        if (Rat(BigInt(i)) < rlo) u = c.point_at(la.lo);
        if (Rat(BigInt(i)) + 1 > rhi) v = c.point_at(la.hi);
        if (u != v) rc.add_segment(u, v, la.mult);
      }
    }
    if (rc.dirty) return std::nullopt;
  }
  return rc.count;
}

inline bool in_sector(const Pt& u, const Pt& v, const Pt& d) {
  const Rat uv = cross(u, v);
  if (uv > 0) return cross(u, d) > 0 && cross(d, v) > 0;
  if (uv < 0) return cross(u, d) > 0 || cross(d, v) > 0;
  return false;
}

// crossings of one curve with a fixed open ray, prefix-summed over segment
// index so any arc's crossing count is a range query. built once per ray at
// the shared corner and queried for every candidate.
struct FixedRayIndex {
  const CurveIndex* idx = nullptr;
  Pt c, d;
  std::vector<long> seg;        // segments with a crossing or a dirty touch
  std::vector<int> contrib;     // prefix sums of crossing signs, size seg+1
  std::vector<int> dirt;        // prefix counts of dirty segments, size seg+1

  FixedRayIndex(const CurveIndex& ci, const Pt& corner, const Pt& dir)
      : idx(&ci), c(corner), d(dir) {
    const LiftedCurve& cv = *ci.c;
    contrib.push_back(0);
    dirt.push_back(0);
    for (std::size_t i = 0; i < cv.segment_count(); ++i) {
      RayCast rc;
      rc.c = c;
      rc.d = d;
      rc.add_segment(cv.verts[i], cv.verts[i + 1], 1);
      if (rc.count == 0 && !rc.dirty) continue;
      seg.push_back((long)i);
      contrib.push_back(contrib.back() + rc.count);
      dirt.push_back(dirt.back() + (rc.dirty ? 1 : 0));
    }
  }

  // crossing count of full segments with index in [i0, i1); negative on dirt
  std::optional<int> range(long i0, long i1) const {
    const auto b = std::lower_bound(seg.begin(), seg.end(), i0) - seg.begin();
    const auto e = std::lower_bound(seg.begin(), seg.end(), i1) - seg.begin();
    if (dirt[(std::size_t)e] - dirt[(std::size_t)b] > 0) return std::nullopt;
    return contrib[(std::size_t)e] - contrib[(std::size_t)b];
  }

  // crossings of the sub-curve between parameters lo < hi, traversal sign applied
  std::optional<int> arc_count(const Rat& lo, const Rat& hi, int mult) const {
    const LiftedCurve& cv = *idx->c;
    const Rat rlo = lo - idx->org, rhi = hi - idx->org;
    const BigInt flo = rat_floor(rlo), fhi = rat_floor(rhi);
    RayCast rc;
    rc.c = c;
    rc.d = d;
    if (flo == fhi || (Rat(fhi) == rhi && fhi == flo + 1)) {
      rc.add_segment(cv.point_at(lo), cv.point_at(hi), 1);
      if (rc.dirty) return std::nullopt;
      return rc.count * mult;
    }
    long i0 = flo.convert_to<long>(), i1 = fhi.convert_to<long>();
    if (Rat(flo) == rlo) {
      // starts at a vertex: the first segment is full
    } else {
      rc.add_segment(cv.point_at(lo), cv.verts[(std::size_t)(i0 + 1)], 1);
      ++i0;
    }
    if (Rat(fhi) != rhi) rc.add_segment(cv.verts[(std::size_t)i1], cv.point_at(hi), 1);
    if (rc.dirty) return std::nullopt;
    const auto interior = range(i0, i1);
    if (!interior) return std::nullopt;
    return (rc.count + *interior) * mult;
  }
};

// exact loop winding at a fixed grid of probe points, as prefix range queries
// over each curve's crossings with vertical probe lines. any probe with
// negative winding rejects a candidate before its face table is built. lines
// through a curve vertex and levels matching a crossing height exactly are
// disabled at build time; a line through an arc endpoint is skipped for that
// candidate only. prime-denominator offsets keep such collisions rare.
struct ProbeGrid {
  struct Line {
    Rat x;
    bool dead = false;
    std::vector<Rat> param_a, param_b;  // ascending crossing parameters
    std::vector<std::vector<int>> pref_a, pref_b;  // [level][hit prefix]
    std::vector<char> level_dead;
  };
  std::vector<Rat> levels;
  std::vector<Line> lines;

  ProbeGrid(const LiftedCurve& A, const LiftedCurve& B, const Window& w, int grid = 16) {
    for (int j = 0; j < grid; ++j)
      levels.push_back(w.y_min + Rat(2 * j + 1) * (w.y_max - w.y_min) / Rat(2 * grid) +
                       Rat(1, 104729));
    for (int i = 0; i < grid; ++i) {
      Line ln;
      ln.x = w.x_min + Rat(2 * i + 1) * (w.x_max - w.x_min) / Rat(2 * grid) + Rat(1, 7919);
      fill_line(ln, A, B);
      lines.push_back(std::move(ln));
    }
  }

  void fill_line(Line& ln, const LiftedCurve& A, const LiftedCurve& B) {
    std::vector<Rat> ya, yb;
    std::vector<int> sa, sb;
    auto scan = [&](const LiftedCurve& c, std::vector<Rat>& par, std::vector<Rat>& ys,
                    std::vector<int>& sgn) {
      for (std::size_t i = 0; i + 1 < c.verts.size(); ++i) {
        const Rat& x0 = c.verts[i].x;
        const Rat& x1 = c.verts[i + 1].x;
        if (x0 == ln.x || x1 == ln.x) {
          ln.dead = true;
          return;
        }
        if ((x0 < ln.x) == (x1 < ln.x)) continue;
        const Rat f = (ln.x - x0) / (x1 - x0);
        par.push_back(c.param_origin + Rat(BigInt(i)) + f);
        ys.push_back(c.verts[i].y + f * (c.verts[i + 1].y - c.verts[i].y));
        sgn.push_back(x1 > x0 ? -1 : 1);  // leftward crossing of the upward ray is +1
      }
    };
    scan(A, ln.param_a, ya, sa);
    if (!ln.dead) scan(B, ln.param_b, yb, sb);
    if (ln.dead) return;
    ln.level_dead.assign(levels.size(), 0);
    ln.pref_a.assign(levels.size(), {});
    ln.pref_b.assign(levels.size(), {});
    for (std::size_t l = 0; l < levels.size(); ++l) {
      auto prefix = [&](const std::vector<Rat>& ys, const std::vector<int>& sgn,
                        std::vector<int>& out) {
        out.resize(ys.size() + 1);
        out[0] = 0;
        for (std::size_t j = 0; j < ys.size(); ++j) {
          if (ys[j] == levels[l]) ln.level_dead[l] = 1;
          out[j + 1] = out[j] + (ys[j] > levels[l] ? sgn[j] : 0);
        }
      };
      prefix(ya, sa, ln.pref_a[l]);
      prefix(yb, sb, ln.pref_b[l]);
    }
  }

  // true when no usable probe sees a negative loop winding
  bool admits(const Rat& a_lo, const Rat& a_hi, int ma, const Rat& b_lo, const Rat& b_hi,
              int mb) const {
    for (const Line& ln : lines) {
      if (ln.dead) continue;
      const auto a0 = std::lower_bound(ln.param_a.begin(), ln.param_a.end(), a_lo);
      const auto a1 = std::lower_bound(ln.param_a.begin(), ln.param_a.end(), a_hi);
      const auto b0 = std::lower_bound(ln.param_b.begin(), ln.param_b.end(), b_lo);
      const auto b1 = std::lower_bound(ln.param_b.begin(), ln.param_b.end(), b_hi);
      // an arc endpoint exactly on this line makes its counts ambiguous
      if (a0 != ln.param_a.end() && *a0 == a_lo) continue;
      if (a1 != ln.param_a.end() && *a1 == a_hi) continue;
      if (b0 != ln.param_b.end() && *b0 == b_lo) continue;
      if (b1 != ln.param_b.end() && *b1 == b_hi) continue;
      const std::size_t ia0 = (std::size_t)(a0 - ln.param_a.begin());
      const std::size_t ia1 = (std::size_t)(a1 - ln.param_a.begin());
      const std::size_t ib0 = (std::size_t)(b0 - ln.param_b.begin());
      const std::size_t ib1 = (std::size_t)(b1 - ln.param_b.begin());
      for (std::size_t l = 0; l < levels.size(); ++l) {
        if (ln.level_dead[l]) continue;
        const int w = ma * (ln.pref_a[l][ia1] - ln.pref_a[l][ia0]) +
                      mb * (ln.pref_b[l][ib1] - ln.pref_b[l][ib0]);
        if (w < 0) return false;
      }
    }
    return true;
  }
};

// face windings of the candidate loop, computed on the graph whose nodes are
// the two corners plus the loop's interior crossings and whose edges are the
// chains between consecutive crossings. both curves are simple, so the
// interior crossings are exactly the curve-curve crossings with parameters
// inside both arcs, and each chain's shoelace term is a prefix range query:
// the cost scales with the crossing count, not the loop length.
// walks: first curve from corner p to corner q, second curve from q back to p.
inline std::optional<Rejection> face_check_from_crossings(
    const CurveIndex& ia, const CurveIndex& ib, const Rat& a_from, const Rat& a_to,
    const Rat& b_from, const Rat& b_to, const std::vector<std::pair<Rat, Rat>>& interior) {
  struct Chain {
    const CurveIndex* idx;
    Rat lo, hi;
    int mult, u, v;
    Rat acs;
  };
  std::vector<Chain> chains;
  auto add_walk = [&](const CurveIndex& idx, const Rat& from, const Rat& to, int node_u,
                      int node_v, std::vector<std::pair<Rat, int>> events) {
    const bool fwd = from < to;
    std::sort(events.begin(), events.end(), [&](const auto& l, const auto& r) {
      return fwd ? l.first < r.first : r.first < l.first;
    });
    int u = node_u;
    Rat prev = from;
    events.push_back({to, node_v});
    for (const auto& [th, id] : events) {
      Chain ch;
      ch.idx = &idx;
      ch.lo = rat_min(prev, th);
      ch.hi = rat_max(prev, th);
      ch.mult = fwd ? 1 : -1;
      ch.u = u;
      ch.v = id;
      ch.acs = idx.arc_cross_sum(ch.lo, ch.hi);
      chains.push_back(std::move(ch));
      u = id;
      prev = th;
    }
  };
  std::vector<std::pair<Rat, int>> ev_a, ev_b;
  for (std::size_t i = 0; i < interior.size(); ++i) {
    ev_a.push_back({interior[i].first, (int)i + 2});
    ev_b.push_back({interior[i].second, (int)i + 2});
  }
  add_walk(ia, a_from, a_to, 0, 1, std::move(ev_a));
  add_walk(ib, b_from, b_to, 1, 0, std::move(ev_b));

  // two darts per chain; outgoing direction from the local tangent
  const int nn = (int)interior.size() + 2;
  const int nd = 2 * (int)chains.size();
  std::vector<Pt> dir((std::size_t)nd);
  std::vector<int> at((std::size_t)nd), face((std::size_t)nd, -1), nxt((std::size_t)nd, -1);
  for (int c = 0; c < (int)chains.size(); ++c) {
    const Chain& ch = chains[(std::size_t)c];
    const LiftedCurve& cv = *ch.idx->c;
    const Pt t_lo = cv.tangent_at(ch.lo), t_hi = cv.tangent_at(ch.hi);
    at[(std::size_t)(2 * c)] = ch.u;
    at[(std::size_t)(2 * c + 1)] = ch.v;
    if (ch.mult > 0) {
      dir[(std::size_t)(2 * c)] = t_lo;
      dir[(std::size_t)(2 * c + 1)] = Pt(Rat(0), Rat(0)) - t_hi;
    } else {
      dir[(std::size_t)(2 * c)] = Pt(Rat(0), Rat(0)) - t_hi;
      dir[(std::size_t)(2 * c + 1)] = t_lo;
    }
  }
  std::vector<std::vector<int>> darts((std::size_t)nn);
  for (int d = 0; d < nd; ++d) darts[(std::size_t)at[(std::size_t)d]].push_back(d);
  for (auto& ds : darts) {
    std::sort(ds.begin(), ds.end(), [&](int l, int r) {
      return dart_less(dir[(std::size_t)l], dir[(std::size_t)r]);
    });
    for (std::size_t k = 0; k + 1 < ds.size(); ++k)
      if (cross(dir[(std::size_t)ds[k]], dir[(std::size_t)ds[k + 1]]) == 0 &&
          dot(dir[(std::size_t)ds[k]], dir[(std::size_t)ds[k + 1]]) > 0)
        throw DegenerateInputError("face check: coincident darts at a crossing");
  }
  auto twin = [](int d) { return d ^ 1; };
  for (int d = 0; d < nd; ++d) {
    const int t = twin(d);
    const auto& ds = darts[(std::size_t)at[(std::size_t)t]];
    std::size_t pos = 0;
    while (ds[pos] != t) ++pos;
    nxt[(std::size_t)d] = ds[(pos + ds.size() - 1) % ds.size()];
  }

  struct Cycle {
    std::vector<int> ds;
    Rat area2;
  };
  std::vector<Cycle> cycles;
  for (int d0 = 0; d0 < nd; ++d0) {
    if (face[(std::size_t)d0] != -1) continue;
    Cycle cy;
    cy.area2 = 0;
    int d = d0;
    do {
      face[(std::size_t)d] = (int)cycles.size();
      cy.ds.push_back(d);
      const Chain& ch = chains[(std::size_t)(d / 2)];
      const int along = (d % 2 == 0 ? 1 : -1) * ch.mult;
      cy.area2 += Rat(along) * ch.acs;
      d = nxt[(std::size_t)d];
    } while (d != d0);
    cycles.push_back(std::move(cy));
  }

  int unbounded = -1;
  for (std::size_t f = 0; f < cycles.size(); ++f) {
    if (cycles[f].area2 < 0) {
      if (unbounded != -1)
        throw DegenerateInputError("face check: multiple outer cycles");
      unbounded = (int)f;
    }
  }
  if (unbounded == -1) throw DegenerateInputError("face check: no outer cycle");

  std::vector<int> winding(cycles.size(), 0);
  std::vector<char> seen(cycles.size(), 0);
  std::vector<int> queue = {unbounded};
  seen[(std::size_t)unbounded] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int f = queue[qi];
    for (const int d : cycles[(std::size_t)f].ds) {
      const int t = twin(d);
      const int g = face[(std::size_t)t];
      // the even dart of each chain traverses it in loop direction
      const int wg = winding[(std::size_t)f] + (t % 2 == 0 ? 1 : -1);
      if (!seen[(std::size_t)g]) {
        seen[(std::size_t)g] = 1;
        winding[(std::size_t)g] = wg;
        queue.push_back(g);
      } else if (winding[(std::size_t)g] != wg) {
        throw DegenerateInputError("face check: inconsistent winding propagation");
      }
    }
  }

  Rat energy2(0);
  for (std::size_t f = 0; f < cycles.size(); ++f) {
    if ((int)f == unbounded) continue;
    if (winding[f] < 0)
      return Rejection{LuneReject::negative_face,
                       "face with winding " + std::to_string(winding[f])};
    energy2 += Rat(winding[f]) * cycles[f].area2;
  }
  for (int d = 0; d < nd; ++d) {
    if (at[(std::size_t)d] > 1) continue;  // corners are nodes 0 and 1
    const int w = winding[(std::size_t)face[(std::size_t)d]];
    if (w != 0 && w != 1)
      return Rejection{LuneReject::endpoint_winding,
                       "corner face winding " + std::to_string(w)};
  }
  if (!(energy2 > 0)) return Rejection{LuneReject::zero_energy, "winding area is zero"};
  return std::nullopt;
}

// winding beside the corner inside the sector swept CCW from ray u to ray v.
// tries axis directions first (indexed casts), then exact interior combinations.
inline int sector_winding(const Pt& corner, const Pt& u, const Pt& v,
                          const std::vector<LoopArc>& arcs) {
  std::vector<Pt> candidates = {Pt(Rat(1), Rat(0)), Pt(Rat(0), Rat(1)),
                                Pt(Rat(-1), Rat(0)), Pt(Rat(0), Rat(-1))};
  const Rat uv = cross(u, v);
  for (int k = 1; k <= 24; ++k) {
    if (uv > 0) candidates.push_back(u + Rat(k) * v);
    else candidates.push_back(Pt(Rat(0), Rat(0)) - (u + Rat(k) * v));
  }
  for (const Pt& d : candidates) {
    if (!in_sector(u, v, d)) continue;
    const auto w = cast_ray(corner, d, arcs);
    if (w) return *w;
  }
  throw DegenerateInputError("sector_winding: no clean ray direction found");
}

}  // namespace detail

struct LuneEnumeration {
  std::vector<LuneCertificate> certificates;
  Window window;
  bool complete_in_window = false;
};

// all lunes with one corner at p, the other at any crossing inside the window.
// a staged filter rejects candidates only when check_lune would: equal corner
// signs, non-positive loop area for the orientation at hand, a negative probe
// winding, a corner-sector winding outside {0,1}, or a failed face check on
// the crossing graph. survivors get the full face table.
// `discovery` must hold every crossing of the two curves, not just the ones
// inside the window, so candidate loops that leave the window are still split
// at all their self-crossings.
inline LuneEnumeration enumerate_lunes(const LiftedCurve& Ls, const LiftedCurve& Lts,
                                       const XPoint& p, const Window& w,
                                       const std::vector<XPoint>& candidates,
                                       const std::vector<XPoint>& discovery) {
  detail::CurveIndex idxA(Ls), idxB(Lts);
  LuneEnumeration result{{}, w, true};
  std::vector<std::optional<LuneCertificate>> found(candidates.size());

  // every candidate loop meets the shared corner along the same two tangent
  // lines, so only four ray directions ever bound its sectors there; crossings
  // with those rays are prefix-indexed once and range-queried per candidate
  const Pt tpa = Ls.tangent_at(p.param_a), tpb = Lts.tangent_at(p.param_b);
  const Pt dir_by_slot[4] = {tpa - tpb, tpa + tpb, Pt(Rat(0), Rat(0)) - (tpa + tpb),
                             Pt(Rat(0), Rat(0)) - (tpa - tpb)};
  std::vector<detail::FixedRayIndex> fra, frb;
  for (const Pt& d : dir_by_slot) {
    fra.emplace_back(idxA, p.location, d);
    frb.emplace_back(idxB, p.location, d);
  }
  const detail::ProbeGrid probes(Ls, Lts, w);

  // discovery list ordered by first-curve parameter for range scans
  std::vector<const XPoint*> by_a;
  by_a.reserve(discovery.size());
  for (const XPoint& x : discovery) by_a.push_back(&x);
  std::sort(by_a.begin(), by_a.end(),
            [](const XPoint* l, const XPoint* r) { return l->param_a < r->param_a; });

  parallel_for(candidates.size(), [&](std::size_t ci) {
    const XPoint& q = candidates[ci];
    if (q.param_a == p.param_a) return;
    if (q.sign == p.sign) return;  // condition (1)

    // orientation with positive loop area; the reverse negates every winding
    const Rat area2 = idxA.arc_cross_sum(p.param_a, q.param_a) -
                      idxB.arc_cross_sum(p.param_b, q.param_b);
    if (area2 == 0) return;
    const LuneDirection dir = area2 > 0 ? LuneDirection::p_to_q : LuneDirection::q_to_p;

    // loop arcs with traversal multipliers for the chosen orientation
    const int flip = (dir == LuneDirection::p_to_q) ? 1 : -1;
    const int ma = (q.param_a > p.param_a ? 1 : -1) * flip;
    const int mb = -(q.param_b > p.param_b ? 1 : -1) * flip;
    const Rat a_lo = rat_min(p.param_a, q.param_a), a_hi = rat_max(p.param_a, q.param_a);
    const Rat b_lo = rat_min(p.param_b, q.param_b), b_hi = rat_max(p.param_b, q.param_b);

    if (!probes.admits(a_lo, a_hi, ma, b_lo, b_hi, mb)) return;  // negative winding seen

    // sector windings at the shared corner via the prefix rays; ma*tpa - mb*tpb
    // is slot 0..3 by the sign pattern, its negation sits in the mirror slot
    const int slot = (ma > 0 ? 0 : 2) + (mb > 0 ? 0 : 1);
    bool ok = true;
    bool fell_back = false;
    for (const int sl : {slot, 3 - slot}) {
      const auto ca = fra[(std::size_t)sl].arc_count(a_lo, a_hi, ma);
      const auto cb = frb[(std::size_t)sl].arc_count(b_lo, b_hi, mb);
      if (!ca || !cb) { fell_back = true; break; }
      const int wp = *ca + *cb;
      if (wp != 0 && wp != 1) { ok = false; break; }
    }

    std::vector<detail::LoopArc> arcs = {{&idxA, a_lo, a_hi, ma}, {&idxB, b_lo, b_hi, mb}};
    const Pt ru_p = Rat(ma) * tpa, rv_p = Rat(-mb) * tpb;
    if (fell_back) {
      const int w1 = detail::sector_winding(p.location, ru_p, rv_p, arcs);
      const int w2 = detail::sector_winding(p.location, rv_p, ru_p, arcs);
      ok = (w1 == 0 || w1 == 1) && (w2 == 0 || w2 == 1);
    }
    if (!ok) return;

    // the other corner is different for every candidate; cast there directly
    const Pt tqa = Ls.tangent_at(q.param_a), tqb = Lts.tangent_at(q.param_b);
    const Pt ru_q = Rat(-ma) * tqa, rv_q = Rat(mb) * tqb;
    const int w1 = detail::sector_winding(q.location, ru_q, rv_q, arcs);
    if (w1 != 0 && w1 != 1) return;
    const int w2 = detail::sector_winding(q.location, rv_q, ru_q, arcs);
    if (w2 != 0 && w2 != 1) return;

    // face windings on the crossing graph; only loops that pass get the
    // full face table built from their materialized arcs
    std::vector<std::pair<Rat, Rat>> interior;
    {
      auto it = std::lower_bound(by_a.begin(), by_a.end(), a_lo,
                                 [](const XPoint* x, const Rat& v) { return x->param_a < v; });
      for (; it != by_a.end() && (*it)->param_a < a_hi; ++it) {
        const XPoint& x = **it;
        if (x.param_a == a_lo || x.param_a == a_hi) continue;
        if (x.param_b > b_lo && x.param_b < b_hi)
          interior.push_back({x.param_a, x.param_b});
      }
    }
    const Rat sa = dir == LuneDirection::p_to_q ? p.param_a : q.param_a;
    const Rat ea = dir == LuneDirection::p_to_q ? q.param_a : p.param_a;
    const Rat sb = dir == LuneDirection::p_to_q ? p.param_b : q.param_b;
    const Rat eb = dir == LuneDirection::p_to_q ? q.param_b : p.param_b;
    if (detail::face_check_from_crossings(idxA, idxB, sa, ea, eb, sb, interior)) return;

    auto outcome = check_lune(arcs_between(Ls, p.param_a, q.param_a),
                              arcs_between(Lts, p.param_b, q.param_b), dir);
    if (auto* cert = std::get_if<LuneCertificate>(&outcome))
      found[ci] = std::move(*cert);
  });

  for (auto& slot : found)
    if (slot) result.certificates.push_back(std::move(*slot));
  std::sort(result.certificates.begin(), result.certificates.end(),
            [](const LuneCertificate& a, const LuneCertificate& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return lex_less(a.endpoint_q.location, b.endpoint_q.location);
            });
  for (std::size_t i = 0; i < result.certificates.size(); ++i) {
    if (i < 26) result.certificates[i].label = (char)('a' + i);
    BBox bb;
    for (const Pt& pt : result.certificates[i].face_table.loop) bb.add(pt);
    if (!(w.x_min < bb.x_min && bb.x_max < w.x_max && w.y_min < bb.y_min && bb.y_max < w.y_max))
      result.complete_in_window = false;
  }
  return result;
}

// every crossing of the two curves, wherever the materialized lifts reach:
// crossings live on both curves, so their bounding-box overlap covers them all
inline std::vector<XPoint> all_crossings(const LiftedCurve& Ls, const LiftedCurve& Lts) {
  BBox ba, bb;
  for (const Pt& v : Ls.verts) ba.add(v);
  for (const Pt& v : Lts.verts) bb.add(v);
  const Rat x0 = rat_max(ba.x_min, bb.x_min) - 1, x1 = rat_min(ba.x_max, bb.x_max) + 1;
  const Rat y0 = rat_max(ba.y_min, bb.y_min) - 1, y1 = rat_min(ba.y_max, bb.y_max) + 1;
  if (!(x0 < x1 && y0 < y1)) return {};
  return intersect_curves(Ls, Lts, Window(x0, x1, y0, y1));
}

inline LuneEnumeration enumerate_lunes(const LiftedCurve& Ls, const LiftedCurve& Lts,
                                       const XPoint& p, const Window& w,
                                       const std::vector<XPoint>& candidates) {
  return enumerate_lunes(Ls, Lts, p, w, candidates, all_crossings(Ls, Lts));
}

inline LuneEnumeration enumerate_lunes(const LiftedCurve& Ls, const LiftedCurve& Lts,
                                       const XPoint& p, const Window& w) {
  const std::vector<XPoint> all = all_crossings(Ls, Lts);
  std::vector<XPoint> inside;
  for (const XPoint& x : all)
    if (w.contains(x.location)) inside.push_back(x);
  return enumerate_lunes(Ls, Lts, p, w, inside, all);
}

inline SigmaP sigma_p(const std::vector<LuneCertificate>& lunes,
                      std::optional<Window> window_used = std::nullopt,
                      bool complete_in_window = false) {
  SigmaP s;
  s.witnesses = lunes;
  s.window_used = std::move(window_used);
  s.complete_in_window = complete_in_window;
  for (const LuneCertificate& c : lunes)
    if (!s.value || c.energy < *s.value) s.value = c.energy;
  return s;
}

// genus>1 viability: the lune survives iff no marked point sits in a face with
// nonzero winding
inline bool filter_forbidden(const LuneCertificate& l, const std::vector<Pt>& marked) {
  for (const Pt& m : marked) {
    const int w = point_winding(l.face_table.loop, m);  // throws when m is on the loop
    if (w != 0) return false;
  }
  return true;
}

}  // namespace lunelab
