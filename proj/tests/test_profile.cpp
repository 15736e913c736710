#include <catch2/catch_amalgamated.hpp>

#include <lunelab/profile.hpp>

using namespace lunelab;

TEST_CASE("profile shape at epsilon 1/100") {
  const Profile p = make_profile(Rat(1, 100));
  REQUIRE(p.breakpoints.size() == 8);
  REQUIRE(p.values.size() == 8);
  CHECK(p.breakpoints[0] == Rat(1, 100));
  CHECK(p.breakpoints[1] == Rat(6, 25));
  CHECK(p.breakpoints[7] == Rat(99, 100));
  CHECK(p.values == std::vector<Rat>{4, 4, 0, 0, -4, -4, 0, 0});

  CHECK(rho_at(p, Rat(1, 8)) == 4);
  CHECK(rho_at(p, Rat(98, 100)) == 0);
  CHECK(rho_at(p, Rat(5, 8)) == -4);
  CHECK(rho_at(p, Rat(2, 5)) == 0);
}

TEST_CASE("ramps interpolate linearly and wrap across zero") {
  const Profile p = make_profile(Rat(1, 100));
  CHECK(rho_at(p, Rat(0)) == 2);  // midpoint of the wrap ramp from 0 up to 4
  CHECK(rho_at(p, Rat(1)) == 2);
  CHECK(rho_at(p, Rat(1, 4)) == 2);
  CHECK(rho_at(p, Rat(1, 2)) == -2);
  CHECK(rho_at(p, Rat(3, 4)) == -2);
  CHECK(rho_at(p, Rat(199, 200)) == 1);
  CHECK(rho_at(p, Rat(51, 100)) == -4);
}

TEST_CASE("rho is one periodic") {
  const Profile p = make_profile(Rat(1, 50));
  for (Rat y : {Rat(0), Rat(1, 8), Rat(39, 40), Rat(1, 2)}) {
    CHECK(rho_at(p, y + 1) == rho_at(p, y));
    CHECK(rho_at(p, y - 3) == rho_at(p, y));
  }
}

TEST_CASE("rho has zero mean for every admissible epsilon") {
  for (Rat e : {Rat(1, 100), Rat(1, 12), Rat(1, 9), Rat(1, 1000), Rat(3, 25)}) {
    const Profile p = make_profile(e);
    CHECK(profile_integral(p) == 0);
  }
}

TEST_CASE("antiderivative oscillation is exactly one") {
  for (Rat e : {Rat(1, 100), Rat(1, 12), Rat(1, 9), Rat(1, 1000), Rat(3, 25)}) {
    CHECK(antiderivative_oscillation(make_profile(e)) == 1);
  }
}

TEST_CASE("epsilon domain is the open interval up to 1/8") {
  CHECK_THROWS_AS(make_profile(Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(make_profile(Rat(1, 8)), std::invalid_argument);
  CHECK_THROWS_AS(make_profile(Rat(-1, 100)), std::invalid_argument);
  CHECK_THROWS_AS(make_profile(Rat(1, 2)), std::invalid_argument);
  CHECK_NOTHROW(make_profile(Rat(124, 1000)));
}
