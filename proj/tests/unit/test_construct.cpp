#include "doctest.h"
#include "omegaforge/construct.hpp"

using namespace omegaforge;

namespace {

CardinalitySpec spec(std::initializer_list<long> base) {
  CardinalitySpec s;
  s.base = base;
  return s;
}

void realizes(std::initializer_list<long> base) {
  CardinalitySpec s = spec(base);
  CAPTURE(s.str());
  Construction c = construct_continuous(s);
  CHECK(c.spectrum.matches(s));
}

}  // namespace

TEST_CASE("construct_continuous spec anchors") {
  SUBCASE("identity for {0,1}") {
    Construction c = construct_continuous(spec({0, 1}));
    CHECK(c.recipe == RecipeCase::Identity);
    CHECK(c.spectrum.finite == std::set<long>{0, 1});
  }
  SUBCASE("{0,1,3} via case 1") {
    Construction c = construct_continuous(spec({0, 1, 3}));
    CHECK(c.recipe == RecipeCase::Prop1Case1);
    CHECK(c.spectrum.finite == std::set<long>{0, 1, 3});
  }
  SUBCASE("{0,2,4} via theorem-1 case 2") {
    Construction c = construct_continuous(spec({0, 2, 4}));
    CHECK(c.recipe == RecipeCase::Thm1Case2);
    CHECK(c.spectrum.finite == std::set<long>{0, 2, 4});
  }
  SUBCASE("{0,3,5} via theorem-1 case 1") {
    Construction c = construct_continuous(spec({0, 3, 5}));
    CHECK(c.recipe == RecipeCase::Thm1Case1);
    CHECK(c.spectrum.finite == std::set<long>{0, 3, 5});
  }
}

TEST_CASE("construct_continuous rejections") {
  CHECK_THROWS_WITH((void)construct_continuous(spec({0, 2})),
                    "not continuously realizable");
  CHECK_THROWS_WITH((void)construct_continuous(spec({0, 3, 4})),
                    "not continuously realizable");
}

TEST_CASE("construct_continuous assorted small sets") {
  realizes({0, 1, 2});
  realizes({0, 1, 4});     // prop 1 case 5 territory
  realizes({0, 2, 3});     // N shape territory
  realizes({0, 1, 2, 3, 4, 5, 6});
  realizes({0, 1, 3, 4});  // 2 absent, even present, r odd
  realizes({0, 2, 3, 4});
  realizes({0, 3, 5, 6});
  realizes({0, 1, 5, 6});
}

TEST_CASE("construct_continuous with arithmetic tails") {
  SUBCASE("odd tail via case 1") {
    CardinalitySpec s = spec({0, 1});
    s.tail = CardinalitySpec::Tail{3, 2};
    Construction c = construct_continuous(s);
    CHECK(c.recipe == RecipeCase::Prop1Case1);
    CHECK(c.spectrum.matches(s));
  }
  SUBCASE("any tail with 2 present via the tent") {
    CardinalitySpec s = spec({0, 1, 2});
    s.tail = CardinalitySpec::Tail{4, 1};
    Construction c = construct_continuous(s);
    CHECK(c.recipe == RecipeCase::Prop1Case2);
    CHECK(c.spectrum.matches(s));
  }
  SUBCASE("even tail without 2, via the ladder search") {
    CardinalitySpec s = spec({0, 1, 3});
    s.tail = CardinalitySpec::Tail{6, 2};
    Construction c = construct_continuous(s);
    CHECK(c.spectrum.matches(s));
  }
  SUBCASE("type-II tail without 1") {
    CardinalitySpec s = spec({0, 3});
    s.tail = CardinalitySpec::Tail{8, 2};
    Construction c = construct_continuous(s);
    CHECK(c.recipe == RecipeCase::Thm1Case2);
    CHECK(c.spectrum.matches(s));
  }
}

TEST_CASE("construct_with_infinity") {
  for (auto base : {std::initializer_list<long>{0},
                    {0, 2},
                    {0, 1, 2},
                    {0, 2, 4}}) {
    CardinalitySpec a = spec(base);
    CAPTURE(a.str());
    Construction c = construct_with_infinity(a);
    CHECK(c.spectrum.has_inf);
    std::set<long> want(base);
    CHECK(c.spectrum.finite == want);
  }
}
