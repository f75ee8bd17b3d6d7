#include "doctest.h"
#include "omegaforge/decide.hpp"

using namespace omegaforge;

namespace {

CardinalitySpec spec(std::initializer_list<long> base) {
  CardinalitySpec s;
  s.base = base;
  return s;
}

}  // namespace

TEST_CASE("cardinality spec parsing") {
  auto s = parse_spec("{0,2,3,4}");
  REQUIRE(s.has_value());
  CHECK(s->base == std::set<long>{0, 2, 3, 4});
  CHECK(s->is_finite());

  auto t = parse_spec("{0,3,+2...}");
  REQUIRE(t.has_value());
  CHECK(t->base == std::set<long>{0});
  REQUIRE(t->tail.has_value());
  CHECK(t->tail->start == 3);
  CHECK(t->tail->step == 2);
  CHECK(t->contains(9));
  CHECK(!t->contains(4));

  auto u = parse_spec("{0,2,inf}");
  REQUIRE(u.has_value());
  CHECK(u->includes_infinity);

  std::string err;
  CHECK(!parse_spec("{0,2", &err).has_value());
  CHECK(err.find("position") != std::string::npos);
  CHECK(!parse_spec("0,2}", &err).has_value());
  CHECK(!parse_spec("{0,,2}", &err).has_value());
}

TEST_CASE("minmax") {
  auto [m1, m2] = minmax(spec({0, 2, 4}));
  CHECK(m1 == 2);
  CHECK(m2 == 4);

  CardinalitySpec t = spec({0, 3});
  t.tail = CardinalitySpec::Tail{7, 2};
  auto [tm1, tm2] = minmax(t);
  CHECK(tm1 == 3);
  CHECK(tm2 == kInfCard);

  auto [um1, um2] = minmax(spec({0, 1}));
  CHECK(um1 == 1);
  CHECK(um2 == 1);

  CHECK_THROWS_WITH((void)minmax(spec({0})), "m1 undefined");
}

TEST_CASE("decide_continuous known cases") {
  CHECK(!decide_continuous(spec({0, 2})));
  CHECK(decide_continuous(spec({0, 2, 4})));
  CHECK(decide_continuous(spec({0, 1, 17})));
  CHECK(!decide_continuous(spec({0, 3, 4})));
  CHECK(decide_continuous(spec({0, 3, 5})));
  CHECK_THROWS_WITH((void)decide_continuous(spec({1, 2})),
                    "0 must belong to S");
}

TEST_CASE("classify_triple fixtures") {
  auto want = [](long n, long mid, long end, TripleClass c) {
    auto got = classify_triple(n, mid, end);
    REQUIRE(got.size() == 1);
    CHECK(got.front() == c);
  };
  want(0, 1, 2, TripleClass::APlus);
  want(1, 1, 0, TripleClass::BMinus);
  want(2, 2, 0, TripleClass::CMinus);
  want(0, 2, 4, TripleClass::APlus);
  want(4, 3, 2, TripleClass::AMinus);
  want(0, 1, 1, TripleClass::BPlus);
  want(0, 1, 0, TripleClass::CPlus);
  want(4, 3, 0, TripleClass::CMinus);
  CHECK(classify_triple(2, 2, 2).empty());
  CHECK(classify_triple(5, 5, 5).empty());
  CHECK(classify_triple(0, 0, 0).empty());
  CHECK(classify_triple(1, 2, 0).empty());
}

TEST_CASE("families are mutually exclusive") {
  for (long n = 0; n <= 8; ++n)
    for (long mid = 0; mid <= 8; ++mid)
      for (long end = 0; end <= 8; ++end) {
        auto adm = admissible_classes(n, mid, end);
        std::set<char> fams;
        for (auto c : adm) fams.insert(triple_family(c));
        CHECK(fams.size() <= 1);
        // canonical classification is single-valued
        CHECK(classify_triple(n, mid, end).size() <= 1);
      }
}

TEST_CASE("decide_analytic known cases") {
  CHECK(!decide_analytic(spec({0, 2, 4})).has_value());

  auto s01 = decide_analytic(spec({0, 1}));
  REQUIRE(s01.has_value());
  CHECK(check_sequence_conditions(s01->sequence, spec({0, 1})));

  auto s012 = decide_analytic(spec({0, 1, 2}));
  REQUIRE(s012.has_value());
  CHECK(s012->sequence.values == std::vector<long>{0, 1, 2, 2, 0});
  REQUIRE(s012->classes.size() == 2);
  CHECK(s012->classes[0] == TripleClass::APlus);
  CHECK(s012->classes[1] == TripleClass::CMinus);

  auto s0234 = decide_analytic(spec({0, 2, 3, 4}));
  REQUIRE(s0234.has_value());
  CHECK(check_sequence_conditions(s0234->sequence, spec({0, 2, 3, 4})));

  // the illustrative longer sequence also passes the conditions
  ExtremaSequence w{{0, 2, 4, 3, 2, 2, 0}};
  CHECK(check_sequence_conditions(w, spec({0, 2, 3, 4})));

  CardinalitySpec inf_s = spec({0, 2});
  inf_s.tail = CardinalitySpec::Tail{4, 2};
  CHECK_THROWS_WITH((void)decide_analytic(inf_s),
                    "analytic spectra are finite");
}

TEST_CASE("decide_analytic_with_witness verified spectra") {
  for (auto base : {std::set<long>{0, 1}, std::set<long>{0, 1, 2},
                    std::set<long>{0, 2, 3, 4}}) {
    CardinalitySpec s;
    s.base = base;
    auto [w, f] = decide_analytic_with_witness(s);
    CHECK(omega_pl(f).count_set() == base);
    CHECK(check_sequence_conditions(w.sequence, s));
  }
  CHECK_THROWS_AS((void)decide_analytic_with_witness(spec({0, 2, 4})),
                  std::invalid_argument);
}
