#include "doctest.h"
#include "omegaforge/rat.hpp"

using namespace omegaforge;

TEST_CASE("rational canonical form and printing") {
  Rat a = make_rat(2, 4);
  CHECK(a == make_rat(1, 2));
  CHECK(rat_str(a) == "1/2");
  CHECK(rat_str(make_rat(-6, 4)) == "-3/2");
  CHECK(rat_str(make_rat(8, 2)) == "4");
  CHECK(rat_str(Rat(0)) == "0");
}

TEST_CASE("rational parsing") {
  CHECK(*rat_parse("3/4") == make_rat(3, 4));
  CHECK(*rat_parse("-3/4") == make_rat(-3, 4));
  CHECK(*rat_parse("17") == Rat(17));
  CHECK(*rat_parse("2/4") == make_rat(1, 2));
  CHECK(!rat_parse("").has_value());
  CHECK(!rat_parse("1/0").has_value());
  CHECK(!rat_parse("a/b").has_value());
  CHECK(!rat_parse("1.5").has_value());
}

TEST_CASE("floor and ceil") {
  CHECK(floor_int(make_rat(7, 2)) == 3);
  CHECK(ceil_int(make_rat(7, 2)) == 4);
  CHECK(floor_int(make_rat(-7, 2)) == -4);
  CHECK(ceil_int(make_rat(-7, 2)) == -3);
  CHECK(floor_int(Rat(5)) == 5);
}

TEST_CASE("rationalize recovers simple fractions") {
  CHECK(rationalize(0.5, Int(1000000)) == make_rat(1, 2));
  CHECK(rationalize(1.0 / 3.0, Int(1000000)) == make_rat(1, 3));
  CHECK(rationalize(-2.25, Int(1000000)) == make_rat(-9, 4));
  Rat pi = rationalize(3.14159265358979, Int(1000));
  CHECK(rat_abs(pi - make_rat(355, 113)) < make_rat(1, 100000));
}
