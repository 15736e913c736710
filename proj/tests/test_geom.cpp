#include <catch2/catch_amalgamated.hpp>

#include <lunelab/geom.hpp>

#include "support.hpp"

#include <random>

using namespace lunelab;

namespace {

std::vector<Pt> translated(const std::vector<Pt>& v, const Pt& d) {
  std::vector<Pt> out;
  for (const auto& p : v) out.push_back(p + d);
  return out;
}

}  // namespace

TEST_CASE("cross dot orient basics") {
  CHECK(cross({1, 0}, {0, 1}) == 1);
  CHECK(cross({0, 1}, {1, 0}) == -1);
  CHECK(dot({3, 4}, {3, 4}) == 25);
  CHECK(orient({0, 0}, {2, 0}, {1, 1}) == 1);
  CHECK(orient({0, 0}, {2, 0}, {1, -1}) == -1);
  CHECK(orient({0, 0}, {2, 0}, {5, 0}) == 0);
  CHECK(lex_less({0, 5}, {1, -5}));
  CHECK(lex_less({1, -5}, {1, 5}));
}

TEST_CASE("lattice reduction lands in the fundamental domain") {
  CHECK(reduce_mod_lattice({Rat(7, 2), Rat(-1, 4)}) == Pt(Rat(1, 2), Rat(3, 4)));
  CHECK(reduce_mod_lattice({Rat(-3), Rat(2)}) == Pt(0, 0));
  CHECK(reduce_mod_lattice({Rat(99, 100), Rat(1, 100)}) == Pt(Rat(99, 100), Rat(1, 100)));
  Pt p{Rat(-1234, 7), Rat(5678, 11)};
  CHECK(reduce_mod_lattice(reduce_mod_lattice(p)) == reduce_mod_lattice(p));
  CHECK(frac_part(Rat(-1, 3)) == Rat(2, 3));
}

TEST_CASE("window containment closed and strict") {
  Window w(Rat(-1), Rat(1), Rat(0), Rat(2));
  CHECK(w.contains({1, 2}));
  CHECK_FALSE(w.contains_strict({1, 2}));
  CHECK(w.contains_strict({0, 1}));
  CHECK_FALSE(w.contains({Rat(11, 10), Rat(1)}));
  CHECK_THROWS_AS(Window(Rat(1), Rat(1), Rat(0), Rat(2)), std::invalid_argument);
  CHECK_THROWS_AS(Window(Rat(0), Rat(1), Rat(2), Rat(1)), std::invalid_argument);
}

TEST_CASE("bbox accumulates extremes") {
  BBox b;
  CHECK(b.empty);
  b.add({1, 2});
  b.add({-3, 5});
  b.add({2, -1});
  CHECK_FALSE(b.empty);
  CHECK(b.x_min == -3);
  CHECK(b.x_max == 2);
  CHECK(b.y_min == -1);
  CHECK(b.y_max == 5);
}

TEST_CASE("point on segment handles endpoints and off-line points") {
  CHECK(point_on_segment({1, 1}, {0, 0}, {2, 2}));
  CHECK(point_on_segment({0, 0}, {0, 0}, {2, 2}));
  CHECK(point_on_segment({2, 2}, {0, 0}, {2, 2}));
  CHECK_FALSE(point_on_segment({3, 3}, {0, 0}, {2, 2}));
  CHECK_FALSE(point_on_segment({1, 0}, {0, 0}, {2, 2}));
}

TEST_CASE("unit square area is one, orientation flips the sign") {
  std::vector<Pt> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(signed_polygon_area(sq) == 1);
  std::vector<Pt> rev(sq.rbegin(), sq.rend());
  CHECK(signed_polygon_area(rev) == -1);
  std::vector<Pt> tri{{0, 0}, {1, 0}, {0, 1}};
  CHECK(signed_polygon_area(tri) == Rat(1, 2));
}

TEST_CASE("area rejects self-crossing and degenerate polygons") {
  std::vector<Pt> bowtie{{0, 0}, {2, 2}, {2, 0}, {0, 2}};
  CHECK_FALSE(polygon_is_simple(bowtie));
  CHECK_THROWS_AS(signed_polygon_area(bowtie), std::invalid_argument);
  std::vector<Pt> repeated{{0, 0}, {1, 0}, {1, 0}, {0, 1}};
  CHECK_FALSE(polygon_is_simple(repeated));
  std::vector<Pt> spike{{0, 0}, {2, 0}, {1, 0}, {1, 1}};
  CHECK_FALSE(polygon_is_simple(spike));
  CHECK_FALSE(polygon_is_simple({{0, 0}, {1, 1}}));
  // collinear continuation along an edge is fine
  std::vector<Pt> collinear{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {0, 1}};
  CHECK(polygon_is_simple(collinear));
  CHECK(signed_polygon_area(collinear) == 2);
}

TEST_CASE("area is translation invariant on random band polygons") {
  std::mt19937_64 rng(20240817);
  for (int k = 0; k < 25; ++k) {
    auto poly = testsupport::random_band_polygon(rng, 2 + k % 6);
    REQUIRE(polygon_is_simple(poly));
    const Rat area = signed_polygon_area(poly);
    const Rat shifted = signed_polygon_area(translated(poly, {Rat(-355, 113), Rat(17, 3)}));
    CHECK(area == shifted);
    CHECK(area > 0);
  }
}

TEST_CASE("shoelace sums windings without a simplicity gate") {
  // symmetric bowtie: the two lobes cancel exactly
  std::vector<Pt> bowtie{{0, 0}, {2, 2}, {2, 0}, {0, 2}};
  CHECK(shoelace(bowtie) == 0);
  std::vector<Pt> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(shoelace(sq) == 1);
}
