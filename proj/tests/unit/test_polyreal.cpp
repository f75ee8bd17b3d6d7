#include "doctest.h"
#include "omegaforge/polyreal.hpp"

using namespace omegaforge;

namespace {

RatPoly expand_roots(const std::vector<Rat>& roots) {
  RatPoly p = RatPoly::constant(Rat(1));
  for (const Rat& r : roots) p = p * RatPoly::linear_root(r);
  return p;
}

// (4x-2)^4 - 2(4x-2)^2
RatPoly w_quartic() {
  RatPoly t = RatPoly::from_longs({-2, 4});
  return t * t * t * t - (t * t) * Rat(2);
}

}  // namespace

TEST_CASE("omega_poly fixtures") {
  CHECK(omega_poly(RatPoly::x()).count_set() == std::set<long>{0, 1});

  RatPoly vsq = RatPoly::from_longs({1, -4, 4});  // (2x-1)^2
  auto vprof = omega_poly(vsq);
  CHECK(vprof.count_set() == std::set<long>{0, 1, 2});
  CHECK(extract_sequence(vprof).values == std::vector<long>{0, 1, 2, 2, 0});

  auto wprof = omega_poly(w_quartic());
  CHECK(wprof.count_set() == std::set<long>{0, 2, 3, 4});
  CHECK(extract_sequence(wprof).values ==
        std::vector<long>{0, 2, 4, 3, 2, 2, 0});

  RatPoly cubic =
      expand_roots({make_rat(1, 4), make_rat(1, 2), make_rat(3, 4)});
  CHECK(omega_poly(cubic).count_set() == std::set<long>{0, 1, 2, 3});

  // constant reports a plateau
  auto cprof = omega_poly(RatPoly::constant(make_rat(2, 3)));
  CHECK(cprof.has_infinite());
  CHECK(cprof.count_set() == std::set<long>{0});
}

TEST_CASE("restrict_critical_levels") {
  // p = (2x-1)^2: one critical level 0, endpoint level 1 hit twice
  RatPoly vsq = RatPoly::from_longs({1, -4, 4});
  auto ls = restrict_critical_levels(vsq);
  REQUIRE(ls.levels.size() == 2);
  CHECK(ls.levels[0].value.exact);
  CHECK(ls.levels[0].value.value == 0);
  CHECK(ls.levels[0].endpoint_hits == 0);
  CHECK(ls.levels[1].value.value == 1);
  CHECK(ls.levels[1].endpoint_hits == 2);

  // p = x^3 - 3x^2 + x on [0,1]: one interior critical level plus p(0), p(1)
  RatPoly c = RatPoly::from_longs({0, 1, -3, 1});
  auto lc = restrict_critical_levels(c);
  CHECK(lc.levels.size() == 3);
  int endpoint_levels = 0;
  for (auto& l : lc.levels) endpoint_levels += l.endpoint_hits;
  CHECK(endpoint_levels == 2);
}

TEST_CASE("hermite_fit") {
  RatPoly line = hermite_fit({{Rat(0), Rat(0), false}, {Rat(1), Rat(1), false}});
  CHECK(line == RatPoly::x());

  RatPoly vsq = hermite_fit(
      {{Rat(0), Rat(1), false}, {make_rat(1, 2), Rat(0), true}, {Rat(1), Rat(1), false}});
  CHECK(vsq == RatPoly::from_longs({1, -4, 4}));

  RatPoly smooth = hermite_fit({{Rat(0), Rat(0), true}, {Rat(1), Rat(1), true}});
  CHECK(smooth == RatPoly::from_longs({0, 0, 3, -2}));

  CHECK_THROWS_WITH(
      (void)hermite_fit({{Rat(0), Rat(0), false}, {Rat(0), Rat(1), false}}),
      "node collision");
}

TEST_CASE("realize_poly exact cases") {
  CardinalitySpec s01;
  s01.base = {0, 1};
  auto w01 = realize_poly(s01);
  CHECK(w01.report.exact);
  CHECK(w01.report.computed_spectrum == std::set<long>{0, 1});

  CardinalitySpec s012;
  s012.base = {0, 1, 2};
  auto w012 = realize_poly(s012);
  CHECK(w012.report.exact);
  CHECK(w012.report.computed_spectrum == std::set<long>{0, 1, 2});

  CardinalitySpec s0234;
  s0234.base = {0, 2, 3, 4};
  auto w0234 = realize_poly(s0234);
  CHECK(w0234.report.exact);
  CHECK(w0234.report.computed_spectrum == std::set<long>{0, 2, 3, 4});
}

TEST_CASE("realize_poly rejects unrealizable targets") {
  CardinalitySpec s;
  s.base = {0, 2, 4};
  CHECK_THROWS_WITH((void)realize_poly(s), "not analytically realizable");
}

TEST_CASE("realize_poly from a given sequence") {
  ExtremaSequence seq{{0, 1, 2, 2, 0}};
  auto w = realize_poly(seq);
  CHECK(w.report.exact);
  CHECK(w.report.computed_spectrum == std::set<long>{0, 1, 2});
}
