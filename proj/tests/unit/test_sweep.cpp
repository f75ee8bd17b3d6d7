#include "doctest.h"
#include "omegaforge/sweep.hpp"

using namespace omegaforge;

namespace {

void roundtrips(std::vector<long> seq) {
  PLFunction f = build_witness(ExtremaSequence{seq});
  auto back = extract_sequence(omega_pl(f));
  CHECK(back.values == seq);
}

}  // namespace

TEST_CASE("build_witness on the spec shapes") {
  roundtrips({0, 1, 2, 2, 0});           // V-like
  roundtrips({0, 2, 4, 3, 2, 2, 0});     // W
  roundtrips({0, 1, 1, 1, 0});           // strictly monotone
  roundtrips({0, 1, 1, 2, 2, 1, 0});     // tent
  roundtrips({0, 2, 4, 3, 0});           // W with the peak at the top level
  roundtrips({0, 1, 1, 2, 3, 2, 1, 1, 0});
}

TEST_CASE("build_witness rejections") {
  // all-A sequence: condition iv fails
  CHECK_THROWS_WITH((void)build_witness(ExtremaSequence{{0, 1, 2, 1, 0}}),
                    "not analytically realizable");
  // degenerate single C+ triple admits no function
  CHECK_THROWS_WITH((void)build_witness(ExtremaSequence{{0, 1, 0}}),
                    "witness construction failed");
  // interior zero band would disconnect the range
  CHECK_THROWS_WITH(
      (void)build_witness(ExtremaSequence{{0, 1, 2, 1, 0, 1, 1, 1, 0}}),
      "witness construction failed");
  CHECK_THROWS_AS((void)build_witness(ExtremaSequence{{0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("witness spectra are preserved for assorted accepted sequences") {
  roundtrips({0, 1, 2, 3, 4, 3, 2, 2, 0});
  roundtrips({0, 2, 4, 5, 6, 4, 2, 2, 0});
  roundtrips({0, 1, 2, 2, 1, 1, 0});
  roundtrips({0, 1, 1, 3, 5, 3, 1, 1, 0});
}
