#pragma once

#include "lunelab/curve.hpp"
#include "lunelab/geom.hpp"
#include "lunelab/intersect.hpp"
#include "lunelab/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace lunelab {

// parameter-interval path on a lifted curve; param_end < param_start walks backward
struct Arc {
  const LiftedCurve* curve = nullptr;
  Rat param_start, param_end;
};

inline std::vector<Pt> materialize_arc(const Arc& arc) {
  if (arc.curve == nullptr) throw std::invalid_argument("arc: null curve");
  if (arc.param_start == arc.param_end)
    throw std::invalid_argument("arc: degenerate (equal endpoints)");
  const LiftedCurve& c = *arc.curve;
  const bool fwd = arc.param_start < arc.param_end;
  const Rat lo = fwd ? arc.param_start : arc.param_end;
  const Rat hi = fwd ? arc.param_end : arc.param_start;
  if (lo < c.param_min() || hi > c.param_max())
    throw std::out_of_range("arc: parameter range outside materialized curve");
  std::vector<Pt> pts;
  pts.push_back(c.point_at(lo));
  const BigInt first = rat_floor(lo - c.param_origin) + 1;
  const BigInt last = rat_ceil(hi - c.param_origin) - 1;
  for (BigInt i = first; i <= last; ++i) {
    Pt v = c.verts[i.convert_to<std::size_t>()];
    if (pts.back() != v) pts.push_back(std::move(v));
  }
  const Pt end = c.point_at(hi);
  if (pts.back() != end) pts.push_back(end);
  if (!fwd) std::reverse(pts.begin(), pts.end());
  return pts;
}

struct Face {
  std::vector<Pt> boundary;  // cycle vertices, face kept on the left
  int winding = 0;
  Rat area;  // signed shoelace of the cycle; positive for bounded faces
  Pt sample_point;
  bool bounded = true;
};

struct FaceTable {
  std::vector<Face> faces;
  std::vector<Pt> loop;  // the underlying closed polyline
};

// winding number via signed crossings of the upward vertical ray from p.
// half-open rule on x handles crossings through vertices exactly.
inline int point_winding(const std::vector<Pt>& loop, const Pt& p) {
  const std::size_t n = loop.size();
  if (n < 2) throw std::invalid_argument("point_winding: empty loop");
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& a = loop[i];
    const Pt& b = loop[(i + 1) % n];
    if (a == b) continue;
    if (point_on_segment(p, a, b))
      throw std::invalid_argument("point_winding: point lies on the loop");
  }
  int w = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& a = loop[i];
    const Pt& b = loop[(i + 1) % n];
    if (a.x <= p.x && p.x < b.x) {
      if (orient(a, b, p) < 0) --w;  // rightward edge passing above p
    } else if (b.x <= p.x && p.x < a.x) {
      if (orient(a, b, p) > 0) ++w;  // leftward edge passing above p
    }
  }
  return w;
}

namespace detail {

struct LoopCrossing {
  std::size_t seg_i, seg_j;
  Rat frac_i, frac_j;
  Pt location;
};

// proper self-crossings of a closed polyline; touches and overlaps between
// non-adjacent segments are degenerate
inline std::vector<LoopCrossing> loop_self_crossings(const std::vector<Pt>& loop) {
  const std::size_t n = loop.size();
  std::vector<LoopCrossing> out;
  BBox bb;
  for (const Pt& p : loop) bb.add(p);
  Window w(bb.x_min - 1, bb.x_max + 1, bb.y_min - 1, bb.y_max + 1);
  SegGrid grid(w);
  for (std::size_t i = 0; i < n; ++i)
    grid.insert(loop[i], loop[(i + 1) % n], (std::uint32_t)i);
  std::vector<std::uint32_t> cand;
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& a0 = loop[i];
    const Pt& a1 = loop[(i + 1) % n];
    grid.gather(a0, a1, cand);
    for (const std::uint32_t ju : cand) {
      const std::size_t j = ju;
      if (j <= i) continue;
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Pt& b0 = loop[j];
      const Pt& b1 = loop[(j + 1) % n];
      const auto hit = seg_seg_hit(a0, a1, b0, b1);
      if (adjacent) {
        if (hit.kind == SegHit::overlap)
          throw DegenerateInputError("loop folds back on itself at segment " +
                                     std::to_string(i));
        continue;  // shared vertex contact is the expected touch
      }
      switch (hit.kind) {
        case SegHit::none:
          break;
        case SegHit::touch:
          throw DegenerateInputError("loop touches itself non-transversally at segments " +
                                     std::to_string(i) + "," + std::to_string(j));
        case SegHit::overlap:
          throw DegenerateInputError("loop overlaps itself at segments " +
                                     std::to_string(i) + "," + std::to_string(j));
        case SegHit::proper:
          out.push_back({i, j, hit.ta, hit.tb, a0 + hit.ta * (a1 - a0)});
          break;
      }
    }
  }
  return out;
}

struct PtLess {
  bool operator()(const Pt& a, const Pt& b) const { return lex_less(a, b); }
};

struct HalfEdge {
  int from = -1, to = -1;
  Pt dir;
  bool loop_dir = false;  // true when this direction is the loop's traversal
  int next = -1;
  int face = -1;
};

// CCW angular order starting from the +x axis
inline bool dart_less(const Pt& a, const Pt& b) {
  auto half = [](const Pt& d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; };
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

// min positive ray parameter where m + tau * dir meets the loop; nullopt when
// the ray escapes cleanly
inline std::optional<Rat> first_ray_hit(const std::vector<Pt>& loop, const Pt& m,
                                        const Pt& dir) {
  std::optional<Rat> best;
  auto consider = [&](const Rat& tau) {
    if (tau > 0 && (!best || tau < *best)) best = tau;
  };
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& c = loop[i];
    const Pt& d = loop[(i + 1) % n];
    if (c == d) continue;
    const Pt e = d - c;
    const Pt f = c - m;
    const Rat denom = cross(dir, e);
    if (denom == 0) {
      if (cross(f, e) != 0) continue;  // parallel, off the ray line
      const Rat dd = dot(dir, dir);
      consider(dot(c - m, dir) / dd);
      consider(dot(d - m, dir) / dd);
      continue;
    }
    const Rat tau = cross(f, e) / denom;
    const Rat u = cross(f, dir) / denom;
    if (u >= 0 && u <= 1) consider(tau);
  }
  return best;
}

// strictly interior point of a simple CCW cycle in linear time: at the
// lexicographically smallest vertex (always convex) either the ear triangle is
// empty, or the contained vertex farthest from the ear diagonal yields an
// interior diagonal. vertices on the diagonal itself cannot anchor one, and
// when the ear is empty its centroid is interior even if the diagonal is an
// edge of the cycle (a triangular face)
inline Pt polygon_interior_point(const std::vector<Pt>& v) {
  const std::size_t n = v.size();
  std::size_t iv = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (lex_less(v[i], v[iv])) iv = i;
  const Pt& a = v[(iv + n - 1) % n];
  const Pt& c = v[iv];
  const Pt& b = v[(iv + 1) % n];
  bool any = false;
  Pt best;
  Rat best_d;
  const Rat toward = cross(a - b, c - b);  // positive side of line ab
  for (std::size_t i = 0; i < n; ++i) {
    if (i == iv || i == (iv + n - 1) % n || i == (iv + 1) % n) continue;
    const Pt& w = v[i];
    if (orient(a, c, w) >= 0 && orient(c, b, w) >= 0 && orient(b, a, w) >= 0) {
      const Rat d = (toward > 0 ? Rat(1) : Rat(-1)) * cross(a - b, w - b);
      if (d > 0 && (!any || d > best_d)) {
        any = true;
        best = w;
        best_d = d;
      }
    }
  }
  if (!any) return Rat(1, 3) * (a + b + c);
  return Rat(1, 2) * (c + best);
}

}  // namespace detail

// planar subdivision of a closed loop with per-face winding numbers.
// the loop must be closed with only transverse self-intersections.
inline FaceTable build_face_table_from_loop(const std::vector<Pt>& loop_in) {
  // strip consecutive duplicates, drop a repeated closing point
  std::vector<Pt> loop;
  for (const Pt& p : loop_in)
    if (loop.empty() || loop.back() != p) loop.push_back(p);
  while (loop.size() > 1 && loop.front() == loop.back()) loop.pop_back();
  if (loop.size() < 3) throw std::invalid_argument("face table: loop has too few vertices");

  const auto crossings = detail::loop_self_crossings(loop);

  // node ids
  std::map<Pt, int, detail::PtLess> node_of;
  std::vector<Pt> nodes;
  auto node_id = [&](const Pt& p) {
    auto it = node_of.find(p);
    if (it != node_of.end()) return it->second;
    const int id = (int)nodes.size();
    node_of.emplace(p, id);
    nodes.push_back(p);
    return id;
  };
  for (const Pt& p : loop) node_id(p);
  const std::size_t n = loop.size();
  std::vector<std::vector<std::pair<Rat, int>>> splits(n);
  for (const auto& c : crossings) {
    const int id = node_id(c.location);
    splits[c.seg_i].push_back({c.frac_i, id});
    splits[c.seg_j].push_back({c.frac_j, id});
  }

  // directed edges along the loop, split at crossings
  std::vector<detail::HalfEdge> he;
  auto add_edge = [&](int u, int v) {
    detail::HalfEdge a, b;
    a.from = u; a.to = v; a.dir = nodes[(std::size_t)v] - nodes[(std::size_t)u];
    a.loop_dir = true;
    b.from = v; b.to = u; b.dir = nodes[(std::size_t)u] - nodes[(std::size_t)v];
    b.loop_dir = false;
    he.push_back(a);
    he.push_back(b);
  };
  for (std::size_t i = 0; i < n; ++i) {
    auto& sp = splits[i];
    std::sort(sp.begin(), sp.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int u = node_of[loop[i]];
    for (const auto& [frac, id] : sp) {
      add_edge(u, id);
      u = id;
    }
    add_edge(u, node_of[loop[(i + 1) % n]]);
  }

  // angular dart order around every node, then face-on-left next pointers
  std::vector<std::vector<int>> darts(nodes.size());
  for (int h = 0; h < (int)he.size(); ++h) darts[(std::size_t)he[(std::size_t)h].from].push_back(h);
  for (auto& ds : darts) {
    std::sort(ds.begin(), ds.end(), [&](int a, int b) {
      return detail::dart_less(he[(std::size_t)a].dir, he[(std::size_t)b].dir);
    });
    for (std::size_t k = 0; k + 1 < ds.size(); ++k)
      if (cross(he[(std::size_t)ds[k]].dir, he[(std::size_t)ds[k + 1]].dir) == 0 &&
          dot(he[(std::size_t)ds[k]].dir, he[(std::size_t)ds[k + 1]].dir) > 0)
        throw DegenerateInputError("face table: coincident darts at a node");
  }
  auto twin = [](int h) { return h ^ 1; };
  for (int h = 0; h < (int)he.size(); ++h) {
    const int t = twin(h);
    const auto& ds = darts[(std::size_t)he[(std::size_t)t].from];
    std::size_t pos = 0;
    while (ds[pos] != t) ++pos;
    he[(std::size_t)h].next = ds[(pos + ds.size() - 1) % ds.size()];  // clockwise neighbor of the twin
  }

  // face cycles
  struct Cycle {
    std::vector<int> hes;
    Rat area2;
  };
  std::vector<Cycle> cycles;
  for (int h0 = 0; h0 < (int)he.size(); ++h0) {
    if (he[(std::size_t)h0].face != -1) continue;
    Cycle cy;
    cy.area2 = 0;
    int h = h0;
    do {
      he[(std::size_t)h].face = (int)cycles.size();
      cy.hes.push_back(h);
      cy.area2 += cross(nodes[(std::size_t)he[(std::size_t)h].from], nodes[(std::size_t)he[(std::size_t)h].to]);
      h = he[(std::size_t)h].next;
    } while (h != h0);
    cycles.push_back(std::move(cy));
  }

  int unbounded = -1;
  for (std::size_t f = 0; f < cycles.size(); ++f) {
    if (cycles[f].area2 < 0) {
      if (unbounded != -1)
        throw DegenerateInputError("face table: multiple outer cycles (loop disconnected?)");
      unbounded = (int)f;
    }
  }
  if (unbounded == -1) throw DegenerateInputError("face table: no outer cycle");

  // winding numbers by breadth-first propagation from the unbounded face
  std::vector<int> winding(cycles.size(), 0);
  std::vector<char> seen(cycles.size(), 0);
  std::vector<int> queue = {unbounded};
  seen[(std::size_t)unbounded] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int f = queue[qi];
    for (const int h : cycles[(std::size_t)f].hes) {
      const int g = he[(std::size_t)twin(h)].face;
      // crossing from the right of a loop-direction edge to its left adds one
      const int wg = winding[(std::size_t)f] + (he[(std::size_t)twin(h)].loop_dir ? 1 : -1);
      if (!seen[(std::size_t)g]) {
        seen[(std::size_t)g] = 1;
        winding[(std::size_t)g] = wg;
        queue.push_back(g);
      } else if (winding[(std::size_t)g] != wg) {
        throw DegenerateInputError("face table: inconsistent winding propagation");
      }
    }
  }
  if (winding[(std::size_t)unbounded] != 0)
    throw DegenerateInputError("face table: unbounded face has nonzero winding");

  FaceTable ft;
  ft.loop = loop;
  for (std::size_t f = 0; f < cycles.size(); ++f) {
    Face face;
    face.bounded = ((int)f != unbounded);
    face.winding = winding[f];
    face.area = cycles[f].area2 / 2;
    for (const int h : cycles[f].hes) face.boundary.push_back(nodes[(std::size_t)he[(std::size_t)h].from]);
    if (face.bounded && !(face.area > 0))
      throw DegenerateInputError("face table: bounded face with non-positive area");
    if (!face.bounded) {
      BBox bb;
      for (const Pt& p : loop) bb.add(p);
      face.sample_point = Pt{bb.x_max + 1, bb.y_max + 1};
    } else {
      std::vector<Pt> sorted = face.boundary;
      std::sort(sorted.begin(), sorted.end(), detail::PtLess{});
      const bool pinched =
          std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
      if (!pinched) {
        face.sample_point = detail::polygon_interior_point(face.boundary);
      } else {
        // cycle revisits a node; step off an edge midpoint toward the inside
        const auto& h0 = he[(std::size_t)cycles[f].hes[0]];
        const Pt m = nodes[(std::size_t)h0.from] + Rat(1, 2) * h0.dir;
        const Pt inward(-h0.dir.y, h0.dir.x);  // left normal
        const auto tau = detail::first_ray_hit(loop, m, inward);
        face.sample_point = m + (tau ? (*tau / 2) : Rat(1)) * inward;
      }
    }
    ft.faces.push_back(std::move(face));
  }
  return ft;
}

// loop of gamma followed by gamma_prime reversed; arcs must share both endpoints
inline FaceTable build_face_table(const Arc& gamma, const Arc& gamma_prime) {
  const auto g = materialize_arc(gamma);
  const auto gp = materialize_arc(gamma_prime);
  if (g.front() != gp.front() || g.back() != gp.back())
    throw std::invalid_argument("face table: arcs do not share endpoints (open loop)");
  std::vector<Pt> loop = g;
  for (std::size_t i = gp.size() - 1; i-- > 0;) loop.push_back(gp[i]);
  return build_face_table_from_loop(loop);
}

// total area with winding multiplicity; requires every bounded winding >= 0
inline Rat winding_area(const FaceTable& ft) {
  Rat total(0);
  for (const Face& f : ft.faces) {
    if (!f.bounded) continue;
    if (f.winding < 0)
      throw std::invalid_argument("winding_area: face with negative winding");
    total += Rat(f.winding) * f.area;
  }
  return total;
}

// windings of the faces whose boundary passes through p
inline std::vector<int> incident_windings(const FaceTable& ft, const Pt& p) {
  std::vector<int> out;
  for (const Face& f : ft.faces)
    for (const Pt& v : f.boundary)
      if (v == p) {
        out.push_back(f.winding);
        break;
      }
  return out;
}

// stratified Monte Carlo estimate of the winding-weighted area over the loop's
// bounding box; floating point, deterministic for a fixed seed
inline double mc_winding_area(const std::vector<Pt>& loop, std::size_t n_samples,
                              std::uint64_t seed) {
  BBox bb;
  for (const Pt& p : loop) bb.add(p);
  const double x0 = rat_to_double(bb.x_min), x1 = rat_to_double(bb.x_max);
  const double y0 = rat_to_double(bb.y_min), y1 = rat_to_double(bb.y_max);
  const double wspan = x1 - x0, hspan = y1 - y0;
  const std::size_t n = loop.size();
  std::vector<double> ax(n), ay(n), bx(n), by(n);
  for (std::size_t i = 0; i < n; ++i) {
    ax[i] = rat_to_double(loop[i].x);
    ay[i] = rat_to_double(loop[i].y);
    bx[i] = rat_to_double(loop[(i + 1) % n].x);
    by[i] = rat_to_double(loop[(i + 1) % n].y);
  }
  // x-binned segment index
  const std::size_t nbins = 1024;
  std::vector<std::vector<std::uint32_t>> bins(nbins);
  auto bin_of = [&](double x) {
    double f = (x - x0) / wspan * (double)nbins;
    if (f < 0) f = 0;
    if (f >= (double)nbins) f = (double)nbins - 1;
    return (std::size_t)f;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = bin_of(std::min(ax[i], bx[i]));
    const std::size_t hi = bin_of(std::max(ax[i], bx[i]));
    for (std::size_t b2 = lo; b2 <= hi; ++b2) bins[b2].push_back((std::uint32_t)i);
  }
  const std::size_t g = (std::size_t)std::ceil(std::sqrt((double)n_samples));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long long total_w = 0;
  for (std::size_t gy = 0; gy < g; ++gy) {
    for (std::size_t gx = 0; gx < g; ++gx) {
      const double px = x0 + ((double)gx + unit(rng)) / (double)g * wspan;
      const double py = y0 + ((double)gy + unit(rng)) / (double)g * hspan;
      int wnum = 0;
      for (const std::uint32_t i : bins[bin_of(px)]) {
        if (ax[i] <= px && px < bx[i]) {
          if ((bx[i] - ax[i]) * (py - ay[i]) - (by[i] - ay[i]) * (px - ax[i]) < 0) --wnum;
        } else if (bx[i] <= px && px < ax[i]) {
          if ((bx[i] - ax[i]) * (py - ay[i]) - (by[i] - ay[i]) * (px - ax[i]) > 0) ++wnum;
        }
      }
      total_w += wnum;
    }
  }
  return (double)total_w / (double)(g * g) * wspan * hspan;
}

}  // namespace lunelab
