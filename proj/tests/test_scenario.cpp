#include <catch2/catch_amalgamated.hpp>

#include <lunelab/lune.hpp>
#include <lunelab/scenario.hpp>

#include <algorithm>
#include <random>

using namespace lunelab;

namespace {

ScenarioConfig tiny_config() {
  ScenarioConfig cfg;
  cfg.name = "tiny";
  cfg.s = Rat(1, 2);
  cfg.t = Rat(1, 2);
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  ScenarioConfig cfg;
  CHECK_NOTHROW(validate_config(cfg));
  ScenarioConfig bad_eps = cfg;
  bad_eps.epsilon = Rat(1, 8);
  CHECK_THROWS_AS(validate_config(bad_eps), std::invalid_argument);
  ScenarioConfig bad_t = cfg;
  bad_t.t = Rat(0);
  CHECK_THROWS_AS(validate_config(bad_t), std::invalid_argument);
  ScenarioConfig bad_delta = cfg;
  bad_delta.perturbation_delta = Rat(-1, 1000);
  CHECK_THROWS_AS(validate_config(bad_delta), std::invalid_argument);
}

TEST_CASE("default window scales with the larger flow time") {
  const ScenarioConfig cfg;  // s = 3, t = 2001/1000
  const Window w = default_window(cfg.s, cfg.t);
  CHECK(w.x_min == -14);
  CHECK(w.x_max == 14);
  CHECK(w.y_min == -14);
  CHECK(w.y_max == 14);
  const Window wt = default_window(Rat(1, 2), Rat(1, 2));
  CHECK(wt.x_max == 4);
}

TEST_CASE("small scenario: curves, crossings and corner choice") {
  const Scenario sc = build_scenario(tiny_config());
  CHECK(sc.config.s == Rat(1, 2));
  CHECK(sc.window.x_max == 4);

  // the undeformed circles sit at 1-2e and 1-e
  CHECK(sc.L.vertices[0].x == Rat(49, 50));
  CHECK(sc.Lp.vertices[0].x == Rat(99, 100));

  // deformed lifts inherit the vertical period
  CHECK(sc.A.period_vector == Pt(0, 1));
  CHECK(sc.B.period_vector == Pt(0, 1));

  CHECK(sc.crossings.size() == 1024);
  CHECK(sc.crossings_all.size() >= sc.crossings.size());
  for (const XPoint& x : sc.crossings) CHECK(sc.window.contains(x.location));

  // corner: minimal |x|, then minimal |y|, then lexicographic
  CHECK(sc.p.location == Pt(Rat(1, 1000000), Rat(-24979999, 100000000)));
  CHECK(sc.p.param_a == Rat(105020001, 2000000));
  CHECK(sc.p.param_b == Rat(9470001, 20000));
  CHECK(sc.p.sign == 1);
  for (const XPoint& x : sc.crossings) {
    CHECK(rat_abs(sc.p.location.x) <= rat_abs(x.location.x));
    if (rat_abs(x.location.x) == rat_abs(sc.p.location.x))
      CHECK(rat_abs(sc.p.location.y) <= rat_abs(x.location.y));
  }
}

TEST_CASE("crossing set is invariant under the common period translation") {
  const Scenario sc = build_scenario(tiny_config());
  const Window inner(Rat(-2), Rat(2), Rat(-2), Rat(1));
  const Window shifted(Rat(-2), Rat(2), Rat(-1), Rat(2));
  const auto base = intersect_curves(sc.A, sc.B, inner);
  const auto up = intersect_curves(sc.A, sc.B, shifted);
  for (const XPoint& x : base) {
    const Pt moved = x.location + Pt(0, 1);
    CHECK(std::any_of(up.begin(), up.end(), [&](const XPoint& y) {
      return y.location == moved && y.sign == x.sign;
    }));
  }
}

TEST_CASE("enumeration result is independent of candidate order") {
  const Scenario sc = build_scenario(tiny_config());
  const auto sorted_run = enumerate_lunes(sc.A, sc.B, sc.p, sc.window, sc.crossings,
                                          sc.crossings_all);
  auto shuffled = sc.crossings;
  std::mt19937_64 rng(97);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto shuffled_run = enumerate_lunes(sc.A, sc.B, sc.p, sc.window, shuffled,
                                            sc.crossings_all);
  REQUIRE(sorted_run.certificates.size() == shuffled_run.certificates.size());
  for (std::size_t i = 0; i < sorted_run.certificates.size(); ++i) {
    CHECK(sorted_run.certificates[i].energy == shuffled_run.certificates[i].energy);
    CHECK(sorted_run.certificates[i].endpoint_q.location ==
          shuffled_run.certificates[i].endpoint_q.location);
  }
}

TEST_CASE("six lunes at the small symmetric scenario") {
  const Scenario sc = build_scenario(tiny_config());
  const auto run = enumerate_lunes(sc.A, sc.B, sc.p, sc.window, sc.crossings,
                                   sc.crossings_all);
  REQUIRE(run.certificates.size() == 6);
  CHECK(run.complete_in_window);
  const SigmaP s = sigma_p(run.certificates, run.window, run.complete_in_window);
  REQUIRE(s.value.has_value());
  CHECK(*s.value == Rat(2399750001, 10000000000));
  // labels are assigned in energy order
  for (std::size_t i = 0; i < run.certificates.size(); ++i) {
    CHECK(run.certificates[i].label == char('a' + i));
    if (i > 0) CHECK(run.certificates[i - 1].energy <= run.certificates[i].energy);
  }
}

TEST_CASE("full-size scenario matches its frozen crossing census") {
  ScenarioConfig cfg;  // defaults: epsilon 1/100, s = 3, t = 2001/1000
  const Scenario sc = build_scenario(cfg);
  CHECK(sc.window.x_max == 14);
  CHECK(sc.crossings.size() == 88704);
  CHECK(sc.p.location ==
        Pt(Rat(-119, 24012000), Rat(BigInt("-3481259879"), BigInt("14407200000"))));
  CHECK(sc.p.param_a == Rat(BigInt("46943940121"), BigInt(288144000)));
  CHECK(sc.p.param_b == Rat(BigInt("3906031921"), BigInt(480240)));
  CHECK(sc.p.sign == 1);
}

TEST_CASE("a window missing every crossing is an error") {
  ScenarioConfig cfg = tiny_config();
  cfg.window = Window(Rat(100), Rat(101), Rat(100), Rat(101));
  CHECK_THROWS_AS(build_scenario(cfg), std::runtime_error);
}
