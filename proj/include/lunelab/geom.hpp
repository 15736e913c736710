#pragma once

#include "lunelab/rational.hpp"

#include <stdexcept>
#include <vector>

namespace lunelab {

struct Pt {
  Rat x, y;
  Pt() : x(0), y(0) {}
  Pt(Rat px, Rat py) : x(std::move(px)), y(std::move(py)) {}
  bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Pt& o) const { return !(*this == o); }
};

inline Pt operator+(const Pt& a, const Pt& b) { return {a.x + b.x, a.y + b.y}; }
inline Pt operator-(const Pt& a, const Pt& b) { return {a.x - b.x, a.y - b.y}; }
inline Pt operator*(const Rat& s, const Pt& p) { return {s * p.x, s * p.y}; }

inline Rat cross(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }
inline Rat dot(const Pt& a, const Pt& b) { return a.x * b.x + a.y * b.y; }

// lexicographic by (x, y)
inline bool lex_less(const Pt& a, const Pt& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

// orientation of c relative to directed line a->b: sign of cross(b-a, c-a)
inline int orient(const Pt& a, const Pt& b, const Pt& c) {
  const Rat v = cross(b - a, c - a);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

struct Window {
  Rat x_min, x_max, y_min, y_max;
  Window() : Window(Rat(0), Rat(1), Rat(0), Rat(1)) {}
  Window(Rat x0, Rat x1, Rat y0, Rat y1)
      : x_min(std::move(x0)), x_max(std::move(x1)), y_min(std::move(y0)), y_max(std::move(y1)) {
    if (!(x_min < x_max) || !(y_min < y_max))
      throw std::invalid_argument("window: empty extent");
  }
  bool contains(const Pt& p) const {
    return x_min <= p.x && p.x <= x_max && y_min <= p.y && p.y <= y_max;
  }
  bool contains_strict(const Pt& p) const {
    return x_min < p.x && p.x < x_max && y_min < p.y && p.y < y_max;
  }
};

struct BBox {
  Rat x_min, x_max, y_min, y_max;
  bool empty = true;
  void add(const Pt& p) {
    if (empty) {
      x_min = x_max = p.x;
      y_min = y_max = p.y;
      empty = false;
      return;
    }
    if (p.x < x_min) x_min = p.x;
    if (p.x > x_max) x_max = p.x;
    if (p.y < y_min) y_min = p.y;
    if (p.y > y_max) y_max = p.y;
  }
};

inline Rat frac_part(const Rat& v) { return v - Rat(rat_floor(v)); }  // in [0,1)

// representative of p in the fundamental domain [0,1)^2 of R^2 / Z^2
inline Pt reduce_mod_lattice(const Pt& p) { return {frac_part(p.x), frac_part(p.y)}; }

inline bool point_on_segment(const Pt& p, const Pt& a, const Pt& b) {
  if (orient(a, b, p) != 0) return false;
  const Rat d = dot(p - a, b - a);
  return d >= 0 && d <= dot(b - a, b - a);
}

namespace detail {

// proper or improper crossing test for the simplicity check; shared endpoints of
// adjacent polygon edges are handled by the caller
inline bool segments_touch(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && point_on_segment(c, a, b)) return true;
  if (o2 == 0 && point_on_segment(d, a, b)) return true;
  if (o3 == 0 && point_on_segment(a, c, d)) return true;
  if (o4 == 0 && point_on_segment(b, c, d)) return true;
  return false;
}

inline Rat shoelace_sum(const std::vector<Pt>& v) {
  Rat s(0);
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
  return s;
}

}  // namespace detail

inline bool polygon_is_simple(const std::vector<Pt>& v) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (v[i] == v[(i + 1) % n]) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Pt &a = v[i], &b = v[(i + 1) % n], &c = v[j], &d = v[(j + 1) % n];
      if (adjacent) {
        // only the shared vertex may touch
        const Pt& shared = (j == i + 1) ? b : a;
        const Pt& far1 = (j == i + 1) ? a : b;
        const Pt& far2 = (j == i + 1) ? d : c;
        if (orient(far1, shared, far2) == 0 && dot(far1 - shared, far2 - shared) > 0)
          return false;  // spike folding back
        continue;
      }
      if (detail::segments_touch(a, b, c, d)) return false;
    }
  }
  return true;
}

// shoelace area of a simple polygon; positive when counterclockwise
inline Rat signed_polygon_area(const std::vector<Pt>& vertices) {
  if (!polygon_is_simple(vertices))
    throw std::invalid_argument("signed_polygon_area: polygon is not simple");
  return detail::shoelace_sum(vertices) / 2;
}

// shoelace without the simplicity check, for loops and arrangement cycles where
// the sum-of-windings interpretation is wanted
inline Rat shoelace(const std::vector<Pt>& vertices) {
  return detail::shoelace_sum(vertices) / 2;
}

}  // namespace lunelab
