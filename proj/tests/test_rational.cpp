#include <catch2/catch_amalgamated.hpp>

#include <lunelab/rational.hpp>

using namespace lunelab;

TEST_CASE("parse accepts fractions and bare integers") {
  CHECK(parse_rat("2001/1000") == Rat(2001, 1000));
  CHECK(parse_rat("-3/6") == Rat(-1, 2));
  CHECK(parse_rat("+7") == Rat(7));
  CHECK(parse_rat("0") == 0);
  CHECK(parse_rat("4/-8") == Rat(-1, 2));
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_rat(""), RatParseError);
  CHECK_THROWS_AS(parse_rat("1/0"), RatParseError);
  CHECK_THROWS_AS(parse_rat("1.5"), RatParseError);
  CHECK_THROWS_AS(parse_rat("a/b"), RatParseError);
  CHECK_THROWS_AS(parse_rat("1/"), RatParseError);
  CHECK_THROWS_AS(parse_rat("/2"), RatParseError);
  CHECK_THROWS_AS(parse_rat("1e3"), RatParseError);
}

TEST_CASE("format is canonical lowest terms with explicit denominator") {
  CHECK(format_rat(Rat(2001, 1000)) == "2001/1000");
  CHECK(format_rat(Rat(-4, 8)) == "-1/2");
  CHECK(format_rat(Rat(3)) == "3/1");
  CHECK(format_rat(Rat(0)) == "0/1");
  CHECK(parse_rat(format_rat(Rat(-355, 113))) == Rat(-355, 113));
}

TEST_CASE("round trip survives large values") {
  Rat big = Rat(BigInt("945953286484800001"), BigInt("345942804960000000"));
  CHECK(parse_rat(format_rat(big)) == big);
  CHECK(rat_num(big) * 2 > rat_den(big) * 5);
}

TEST_CASE("floor and ceil are exact on negatives") {
  CHECK(rat_floor(Rat(-1, 2)) == -1);
  CHECK(rat_ceil(Rat(-1, 2)) == 0);
  CHECK(rat_floor(Rat(7, 2)) == 3);
  CHECK(rat_ceil(Rat(7, 2)) == 4);
  CHECK(rat_floor(Rat(-3)) == -3);
  CHECK(rat_ceil(Rat(-3)) == -3);
  CHECK(floor_div(BigInt(-7), BigInt(2)) == -4);
  CHECK(floor_div(BigInt(7), BigInt(-2)) == -4);
}

TEST_CASE("min max abs") {
  CHECK(rat_min(Rat(3), Rat(2001, 1000)) == Rat(2001, 1000));
  CHECK(rat_max(Rat(3), Rat(2001, 1000)) == 3);
  CHECK(rat_min(Rat(-1), Rat(-2)) == -2);
  CHECK(rat_abs(Rat(-5, 3)) == Rat(5, 3));
  CHECK(rat_abs(Rat(5, 3)) == Rat(5, 3));
}

TEST_CASE("decimal rendering keeps significant digits without exponents") {
  CHECK(rat_to_decimal(Rat(1, 3), 9) == "0.333333333");
  CHECK(rat_to_decimal(Rat(2001, 1000), 9) == "2.001");
  CHECK(rat_to_decimal(Rat(0), 5) == "0");
  CHECK(rat_to_decimal(Rat(-1, 8), 3) == "-0.125");
  CHECK(rat_to_decimal(Rat(123456, 1), 3) == "123000");
  CHECK(rat_to_decimal(Rat(1, 1000000), 2) == "0.000001");
}

TEST_CASE("decimal rounding is half away from zero") {
  CHECK(rat_to_decimal(Rat(1, 2), 1) == "0.5");
  CHECK(rat_to_decimal(Rat(-1, 2), 1) == "-0.5");
  CHECK(rat_to_decimal(Rat(55, 100), 1) == "0.6");
  CHECK(rat_to_decimal(Rat(25, 100), 1) == "0.3");
  CHECK(rat_to_decimal(Rat(-25, 100), 1) == "-0.3");
  CHECK(rat_to_decimal(Rat(249, 1000), 2) == "0.25");
}

TEST_CASE("decimal rendering rejects nonpositive digit counts") {
  CHECK_THROWS_AS(rat_to_decimal(Rat(1), 0), std::invalid_argument);
}
