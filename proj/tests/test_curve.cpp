#include <catch2/catch_amalgamated.hpp>

#include <lunelab/curve.hpp>
#include <lunelab/shear.hpp>

using namespace lunelab;

TEST_CASE("torus curve stores vertices reduced mod the lattice") {
  TorusCurve c({{Rat(9, 8), Rat(0)}, {Rat(9, 8), Rat(1, 3)}, {Rat(-7, 8), Rat(2, 3)}});
  CHECK(c.vertices[0] == Pt(Rat(1, 8), Rat(0)));
  CHECK(c.vertices[2] == Pt(Rat(1, 8), Rat(2, 3)));
}

TEST_CASE("torus curve validation") {
  CHECK_THROWS_AS(TorusCurve({{0, 0}, {Rat(1, 2), Rat(1, 2)}}), std::invalid_argument);
  CHECK_THROWS_AS(TorusCurve({{0, 0}, {0, 0}, {Rat(1, 2), 0}}), std::invalid_argument);
  CHECK_THROWS_AS(TorusCurve({{0, 0}, {Rat(1, 3), 0}, {Rat(2, 3), 0}}, true, 2),
                  std::invalid_argument);
  // reduction can collapse distinct inputs onto the same vertex
  CHECK_THROWS_AS(TorusCurve({{0, 0}, {1, 1}, {Rat(1, 2), 0}}), std::invalid_argument);
}

TEST_CASE("torus step picks the minimal representative") {
  CHECK(torus_step({Rat(9, 10), 0}, {Rat(1, 10), 0}) == Pt(Rat(1, 5), 0));
  CHECK(torus_step({Rat(1, 10), 0}, {Rat(9, 10), 0}) == Pt(Rat(-1, 5), 0));
  CHECK(torus_step({0, 0}, {Rat(1, 2), Rat(1, 2)}) == Pt(Rat(1, 2), Rat(1, 2)));
  CHECK(torus_step({0, Rat(3, 4)}, {0, Rat(1, 4)}) == Pt(0, Rat(1, 2)));
}

TEST_CASE("meridian lift is a vertical stack") {
  const TorusCurve m = meridian(Rat(49, 50));
  const LiftedCurve lc = lift_curve(m, {Rat(49, 50), Rat(0)}, 3);
  CHECK(lc.period_vector == Pt(0, 1));
  CHECK(lc.per_period == 3);
  CHECK(lc.periods == 3);
  REQUIRE(lc.verts.size() == 10);
  CHECK(lc.verts.front() == Pt(Rat(49, 50), 0));
  CHECK(lc.verts.back() == Pt(Rat(49, 50), 3));
  for (const Pt& v : lc.verts) CHECK(v.x == Rat(49, 50));
  CHECK(lc.param_min() == 0);
  CHECK(lc.param_max() == 9);
}

TEST_CASE("lift starts at the requested base even off the fundamental domain") {
  const TorusCurve m = meridian(Rat(1, 4));
  const LiftedCurve lc = lift_curve(m, {Rat(1, 4), Rat(-2)}, 2);
  CHECK(lc.verts.front() == Pt(Rat(1, 4), -2));
  CHECK(lc.verts.back() == Pt(Rat(1, 4), 0));
}

TEST_CASE("lift rejects bad bases and null-homotopic curves") {
  const TorusCurve m = meridian(Rat(1, 4));
  CHECK_THROWS_AS(lift_curve(m, {Rat(1, 3), Rat(0)}, 2), std::invalid_argument);
  CHECK_THROWS_AS(lift_curve(m, {Rat(1, 4), Rat(1, 5)}, 2), std::invalid_argument);
  CHECK_THROWS_AS(lift_curve(m, {Rat(1, 4), Rat(0)}, 0), std::invalid_argument);
  TorusCurve square({{Rat(1, 10), Rat(1, 10)},
                     {Rat(2, 10), Rat(1, 10)},
                     {Rat(2, 10), Rat(2, 10)},
                     {Rat(1, 10), Rat(2, 10)}});
  CHECK_THROWS_AS(lift_curve(square, {Rat(1, 10), Rat(1, 10)}, 1), std::invalid_argument);
}

TEST_CASE("projection of the lift recovers the torus curve") {
  const TorusCurve m = meridian(Rat(3, 5));
  const LiftedCurve lc = lift_curve(m, {Rat(3, 5), Rat(1, 3)}, 2);
  for (std::size_t i = 0; i + 1 < lc.verts.size(); ++i)
    CHECK(reduce_mod_lattice(lc.verts[i]) == m.vertices[(1 + i) % 3]);
}

TEST_CASE("point and tangent evaluation along the lift") {
  const TorusCurve m = meridian(Rat(0));
  const LiftedCurve lc = lift_curve(m, {Rat(0), Rat(0)}, 1);
  CHECK(lc.point_at(Rat(1, 2)) == Pt(0, Rat(1, 6)));
  CHECK(lc.point_at(0) == Pt(0, 0));
  CHECK(lc.point_at(3) == Pt(0, 1));
  CHECK(lc.tangent_at(Rat(1, 2)) == Pt(0, Rat(1, 3)));
  CHECK(lc.tangent_at(3) == Pt(0, Rat(1, 3)));  // end parameter uses the last segment
  CHECK_THROWS_AS(lc.point_at(Rat(7, 2)), std::out_of_range);
  CHECK_THROWS_AS(lc.point_at(Rat(-1, 2)), std::out_of_range);
  CHECK_THROWS_AS(lc.tangent_at(4), std::out_of_range);
}

TEST_CASE("polyline normalization merges collinear runs and duplicates") {
  std::vector<Pt> in{{0, 0}, {1, 0}, {1, 0}, {2, 0}, {2, 1}};
  CHECK(normalize_polyline(in) == std::vector<Pt>{{0, 0}, {2, 0}, {2, 1}});
  std::vector<Pt> zig{{0, 0}, {1, 0}, {0, 0}};  // fold-back survives normalization
  CHECK(normalize_polyline(zig) == zig);
  CHECK(polyline_equal_normalized(in, {{0, 0}, {2, 0}, {2, 1}}));
  CHECK_FALSE(polyline_equal_normalized(in, {{0, 0}, {2, 0}, {2, 2}}));
}

TEST_CASE("canonical torus vertices rotate to the lex-least vertex") {
  TorusCurve a({{Rat(2, 3), Rat(1, 5)}, {Rat(1, 3), Rat(1, 5)}, {Rat(1, 3), Rat(4, 5)}});
  auto canon = torus_canonical_vertices(a);
  CHECK(canon.front() == Pt(Rat(1, 3), Rat(1, 5)));
  TorusCurve b({{Rat(1, 3), Rat(4, 5)}, {Rat(2, 3), Rat(1, 5)}, {Rat(1, 3), Rat(1, 5)}});
  CHECK(torus_curve_equal(a, b));
  // a redundant collinear vertex is merged away
  TorusCurve c({{Rat(2, 3), Rat(1, 5)},
                {Rat(1, 2), Rat(1, 5)},
                {Rat(1, 3), Rat(1, 5)},
                {Rat(1, 3), Rat(4, 5)}});
  CHECK(torus_curve_equal(a, c));
  TorusCurve d({{Rat(1, 3), Rat(1, 5)}, {Rat(1, 3), Rat(4, 5)}, {Rat(1, 5), Rat(1, 2)}});
  CHECK_FALSE(torus_curve_equal(a, d));
  // same corners, but routed up through y = 1/2 instead of wrapping through 0
  TorusCurve e({{Rat(2, 3), Rat(1, 5)},
                {Rat(1, 3), Rat(1, 5)},
                {Rat(1, 3), Rat(1, 2)},
                {Rat(1, 3), Rat(4, 5)}});
  CHECK_FALSE(torus_curve_equal(a, e));
}

TEST_CASE("straight geodesics compare equal across vertex placements") {
  TorusCurve m({{Rat(1, 4), Rat(0)}, {Rat(1, 4), Rat(1, 2)}, {Rat(1, 4), Rat(3, 4)}});
  CHECK(torus_curve_equal(meridian(Rat(1, 4)), m));
  CHECK_FALSE(torus_curve_equal(meridian(Rat(1, 4)), meridian(Rat(1, 2))));
  TorusCurve diag({{Rat(0), Rat(0)}, {Rat(1, 3), Rat(1, 3)}, {Rat(2, 3), Rat(2, 3)}});
  TorusCurve diag2({{Rat(1, 5), Rat(1, 5)}, {Rat(1, 2), Rat(1, 2)}, {Rat(9, 10), Rat(9, 10)}});
  CHECK(torus_curve_equal(diag, diag2));
  CHECK_FALSE(torus_curve_equal(diag, meridian(Rat(0))));
}

TEST_CASE("lift commutes with the shear pushforward") {
  // shear the torus curve first and lift, versus lift first and shear the plane
  // curve; both describe the same periodic comb
  const Rat eps(1, 100), s(1, 4);
  const Profile prof = make_profile(eps);
  const TorusCurve L = meridian(1 - 2 * eps);
  const ShearMap g = horizontal_shear(s, prof);

  const TorusCurve comb = apply_shear(L, g);
  const Pt start{1 - 2 * eps + s * rho_at(prof, 0), Rat(0)};
  const LiftedCurve torus_side = lift_curve(comb, start, 2);

  LiftedCurve plane_side = apply_shear(lift_curve(L, {1 - 2 * eps, Rat(0)}, 2), g);
  CHECK(polyline_equal_normalized(torus_side.verts, plane_side.verts));
  CHECK(torus_side.period_vector == plane_side.period_vector);
}
