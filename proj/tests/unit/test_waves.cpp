#include "doctest.h"
#include "omegaforge/waves.hpp"

using namespace omegaforge;

namespace {

SignatureDescr const_sig(long k) {
  SignatureDescr s;
  s.kind = SignatureDescr::Kind::Constant;
  s.k = k;
  return s;
}

SignatureDescr periodic_sig(std::vector<long> word) {
  SignatureDescr s;
  s.kind = SignatureDescr::Kind::Periodic;
  s.word = std::move(word);
  return s;
}

}  // namespace

TEST_CASE("wave counts") {
  auto w1 = mk_wave(1, Rat(0), Rat(1), Rat(0), Rat(1));
  CHECK(tree_count_at(w1, make_rat(1, 3)) == 1);
  CHECK(tree_count_at(w1, Rat(0)) == 1);
  CHECK(tree_count_at(w1, Rat(1)) == 1);

  auto w3 = mk_wave(3, Rat(0), Rat(1), Rat(0), Rat(1));
  CHECK(tree_count_at(w3, make_rat(1, 2)) == 3);
  CHECK(tree_count_at(w3, Rat(0)) == 2);
  CHECK(tree_count_at(w3, Rat(1)) == 2);

  auto w5 = mk_wave(5, Rat(0), Rat(1), Rat(0), Rat(1));
  CHECK(tree_count_at(w5, make_rat(1, 2)) == 5);
  CHECK(tree_count_at(w5, Rat(0)) == 3);
  CHECK(tree_count_at(w5, Rat(1)) == 3);

  CHECK_THROWS_WITH((void)mk_wave(3, Rat(0), Rat(1), Rat(1), Rat(1)),
                    "empty value range");
}

TEST_CASE("constant infinite stair") {
  auto s3 = mk_infstair(const_sig(3), Rat(0), Rat(1), Rat(0), Rat(1));
  CHECK(tree_count_at(s3, make_rat(5, 8)) == 3);
  CHECK(tree_count_at(s3, make_rat(1, 2)) == 3);  // junction: 2 + 2 - 1
  CHECK(tree_count_at(s3, make_rat(3, 4)) == 3);
  CHECK(tree_count_at(s3, Rat(0)) == 1);
  CHECK(tree_count_at(s3, Rat(1)) == 1);
  CHECK(tree_count_at(s3, Rat(2)) == 0);

  auto om = omega_sym(s3);
  CHECK(om.finite == std::set<long>{0, 1, 3});
  CHECK(!om.has_inf);

  auto s1 = mk_infstair(const_sig(1), Rat(0), Rat(1), Rat(0), Rat(1));
  CHECK(omega_sym(s1).finite == std::set<long>{0, 1});
}

TEST_CASE("periodic stair junction arithmetic") {
  auto s35 = mk_infstair(periodic_sig({3, 5}), Rat(0), Rat(1), Rat(0), Rat(1));
  CHECK(tree_count_at(s35, make_rat(1, 2)) == 4);  // (3+5)/2
  auto om = omega_sym(s35);
  CHECK(om.finite == std::set<long>{0, 1, 3, 4, 5});
}

TEST_CASE("pair stair with explicit pivot") {
  auto pr = mk_infstair_pivot(3, 1, make_rat(1, 2), Rat(0), Rat(1), Rat(0),
                              Rat(1));
  CHECK(tree_count_at(pr, make_rat(1, 4)) == 3);
  CHECK(tree_count_at(pr, make_rat(7, 8)) == 1);
  CHECK(tree_count_at(pr, make_rat(1, 2)) == 2);  // pivot: (3+1)/2
  auto om = omega_sym(pr);
  CHECK(om.finite == std::set<long>{0, 1, 2, 3});
}

TEST_CASE("plateau and segment") {
  auto p = mk_plateau(Rat(0), Rat(1), make_rat(1, 2));
  CHECK(tree_count_at(p, make_rat(1, 2)) == kInfCard);
  CHECK(tree_count_at(p, Rat(0)) == 0);
  auto om = omega_sym(p);
  CHECK(om.has_inf);
  CHECK(om.finite == std::set<long>{0});

  auto seg = mk_segment(Rat(0), Rat(1), Rat(1), Rat(0));
  CHECK(tree_count_at(seg, make_rat(1, 3)) == 1);
}

TEST_CASE("concat with shared boundary point") {
  auto up = mk_segment(Rat(0), Rat(0), make_rat(1, 2), Rat(1));
  auto down = mk_segment(make_rat(1, 2), Rat(1), Rat(1), Rat(0));
  auto tent = mk_concat({up, down});
  CHECK(tree_count_at(tent, Rat(1)) == 1);
  CHECK(tree_count_at(tent, make_rat(1, 2)) == 2);
  CHECK(tree_count_at(tent, Rat(0)) == 2);
  CHECK_THROWS_WITH(
      (void)mk_concat(
          {up, mk_segment(make_rat(1, 2), Rat(0), Rat(1), make_rat(1, 2))}),
      "concat joint value mismatch");
}

TEST_CASE("amend identity with a stair") {
  auto host = mk_segment(Rat(0), Rat(0), Rat(1), Rat(1));
  auto patch = mk_infstair(const_sig(3), make_rat(1, 4), make_rat(1, 2),
                           make_rat(1, 4), make_rat(1, 2));
  auto amended = mk_amend(host, {patch});
  CHECK(tree_count_at(amended, make_rat(3, 8)) == 3);
  CHECK(tree_count_at(amended, make_rat(1, 8)) == 1);
  CHECK(tree_count_at(amended, make_rat(1, 4)) == 1);
  CHECK(tree_count_at(amended, make_rat(1, 2)) == 1);
  auto om = omega_sym(amended);
  CHECK(om.finite == std::set<long>{0, 1, 3});

  auto bad = mk_segment(make_rat(1, 4), Rat(0), make_rat(1, 2), make_rat(1, 2));
  CHECK_THROWS_WITH((void)mk_amend(host, {bad}), "amendment seam violation");
}

TEST_CASE("stack of stairs: bands, joins and tail") {
  auto st = mk_stack(Rat(0), Rat(1), Rat(0), Rat(1), {3, 5}, std::nullopt);
  CHECK(tree_count_at(st, make_rat(1, 4)) == 3);
  CHECK(tree_count_at(st, make_rat(5, 8)) == 5);
  CHECK(tree_count_at(st, make_rat(1, 2)) == 1);  // join point
  auto om = omega_sym(st);
  CHECK(om.finite == std::set<long>{0, 1, 3, 5});
  CHECK(om.tails.empty());

  auto tl = mk_stack(Rat(0), Rat(1), Rat(0), Rat(1), {},
                     std::make_pair(3L, 2L));
  auto omt = omega_sym(tl);
  REQUIRE(omt.tails.size() == 1);
  CHECK(omt.tails[0] == std::make_pair(3L, 2L));
  CHECK(omt.finite == std::set<long>{0, 1});
  CHECK(tree_count_at(tl, make_rat(1, 4)) == 3);
  CHECK(tree_count_at(tl, make_rat(5, 8)) == 5);
  CHECK(tree_count_at(tl, make_rat(13, 16)) == 7);
}

TEST_CASE("strand stair pivots") {
  auto ss = mk_strand_stair(Rat(0), Rat(1),
                            {Rat(0), make_rat(1, 2), Rat(1)}, {1, 3}, false);
  CHECK(tree_count_at(ss, make_rat(1, 4)) == 1);
  CHECK(tree_count_at(ss, make_rat(3, 4)) == 3);
  CHECK(tree_count_at(ss, make_rat(1, 2)) == 2);  // pivot junction (1+3)/2
  CHECK(tree_count_at(ss, Rat(0)) == 1);
  CHECK(tree_count_at(ss, Rat(1)) == 1);
  auto om = omega_sym(ss);
  CHECK(om.finite == std::set<long>{0, 1, 2, 3});

  auto dss = mk_strand_stair(Rat(0), Rat(1),
                             {Rat(0), make_rat(1, 2), Rat(1)}, {1, 3}, true);
  CHECK(tree_count_at(dss, make_rat(3, 4)) == 3);
  CHECK(tree_count_at(dss, make_rat(1, 2)) == 2);
  CHECK(tree_value_at(dss, Rat(0)) == Rat(1));
  CHECK(tree_value_at(dss, Rat(1)) == Rat(0));

  auto s3 = mk_strand_stair(Rat(0), Rat(1),
                            {Rat(0), make_rat(1, 3), make_rat(2, 3), Rat(1)},
                            {1, 5, 3}, false);
  CHECK(tree_count_at(s3, make_rat(1, 2)) == 5);
  CHECK(tree_count_at(s3, make_rat(1, 3)) == 3);  // (1+5)/2
  CHECK(tree_count_at(s3, make_rat(2, 3)) == 4);  // (5+3)/2
}

TEST_CASE("affine reflection") {
  auto s3 = mk_infstair(const_sig(3), Rat(0), Rat(1), Rat(0), Rat(1));
  auto refl = mk_affine(s3, Rat(-1), Rat(1), Rat(1), Rat(0));
  CHECK(tree_count_at(refl, make_rat(5, 8)) == 3);
  CHECK(tree_value_at(refl, Rat(0)) == Rat(1));
  CHECK(tree_value_at(refl, Rat(1)) == Rat(0));
  auto om = omega_sym(refl);
  CHECK(om.finite == std::set<long>{0, 1, 3});
}

TEST_CASE("sampled counts stay inside omega_sym") {
  auto s35 = mk_infstair(periodic_sig({3, 5}), Rat(0), Rat(1), Rat(0), Rat(1));
  auto om = omega_sym(s35);
  for (long i = 0; i <= 100; ++i) {
    Rat y = make_rat(i * 37 % 101, 101);
    long c = tree_count_at(s35, y);
    CHECK(om.contains(c));
  }
}

TEST_CASE("materialize") {
  auto id = mk_segment(Rat(0), Rat(0), Rat(1), Rat(1));
  PLFunction f = materialize(id, 1, 1);
  CHECK(f.breakpoints.size() == 2);

  auto s3 = mk_infstair(const_sig(3), Rat(0), Rat(1), Rat(0), Rat(1));
  PLFunction g = materialize(s3, 2, 1);
  CHECK(g.breakpoints.size() > 6);
  g.validate();

  auto p = mk_plateau(Rat(0), Rat(1), make_rat(1, 2));
  PLFunction h = materialize(p, 1, 1);
  CHECK(h.breakpoints.size() == 2);
  CHECK(h.breakpoints[0].second == h.breakpoints[1].second);
}

TEST_CASE("finite stair blocks and junctions") {
  // signature (5,1,3): blocks tile the domain, junctions share one value
  auto st = mk_stair({5, 1, 3}, Rat(0), Rat(1), Rat(0), Rat(1));
  CHECK(tree_count_at(st, make_rat(1, 6)) == 5);
  CHECK(tree_count_at(st, make_rat(1, 2)) == 1);
  CHECK(tree_count_at(st, make_rat(5, 6)) == 3);
  // junction between the 5-block and the 1-block: 3 + 1 - 1
  CHECK(tree_count_at(st, make_rat(1, 3)) == 3);
  // junction between the 1-block and the 3-block: 1 + 2 - 1
  CHECK(tree_count_at(st, make_rat(2, 3)) == 2);
  auto om = omega_sym(st);
  CHECK(om.finite == std::set<long>{0, 1, 2, 3, 5});
}

TEST_CASE("leaf support addressing") {
  SignatureDescr sig;
  sig.kind = SignatureDescr::Kind::Constant;
  sig.k = 3;
  auto s3 = mk_infstair(sig, Rat(0), Rat(1), Rat(0), Rat(1));
  auto [a, b] = leaf_support(s3, LeafAddress{0, 1});
  CHECK(a == make_rat(1, 2));
  CHECK(b == make_rat(7, 12));
  auto [c, d] = leaf_support(s3, LeafAddress{0, 3});
  CHECK(d == make_rat(3, 4));
  CHECK(c < d);
  CHECK_THROWS_WITH((void)leaf_support(s3, LeafAddress{0, 4}),
                    "leaf index exceeds the block order");
}

TEST_CASE("degenerate segments are rejected") {
  CHECK_THROWS_WITH((void)mk_segment(Rat(0), Rat(1), Rat(1), Rat(1)),
                    "constant segment; use a plateau node");
}
