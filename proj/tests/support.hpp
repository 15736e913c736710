#pragma once

#include <lunelab/geom.hpp>

#include <random>
#include <vector>

namespace lunelab::testsupport {

// two x-monotone chains separated by the y = 0 band: simple by construction,
// counterclockwise, all coordinates rational
inline std::vector<Pt> random_band_polygon(std::mt19937_64& rng, int half) {
  std::uniform_int_distribution<int> num(1, 60);
  std::vector<Pt> v;
  for (int i = 0; i < half; ++i)
    v.push_back({Rat(3 * i, 2) + Rat(num(rng), 61), -Rat(num(rng) + 10, 7)});
  for (int i = half - 1; i >= 0; --i)
    v.push_back({Rat(3 * i, 2) + Rat(num(rng), 61), Rat(num(rng) + 10, 7)});
  return v;
}

}  // namespace lunelab::testsupport
