#ifndef OMEGAFORGE_ORACLE_HPP
#define OMEGAFORGE_ORACLE_HPP

#include <functional>
#include <set>
#include <vector>

#include "omegaforge/decide.hpp"

namespace omegaforge {

// Alternating extremum-level word over integer levels with the endpoint
// values included: (f(0), e1, ..., et, f(1)), adjacent entries distinct,
// strictly alternating rises and falls. Canonical form is the
// lexicographically least of the word and its reversal.
struct ShapeWord {
  std::vector<long> values;

  bool is_canonical() const;
  PLFunction to_pl() const;
  // Spectrum by direct integer counting; cheaper than omega_pl.
  std::set<long> spectrum() const;
};

// Every canonical shape with at most max_extrema interior extrema and levels
// in 1..max_levels, each exactly once. Returns false from the visitor to
// stop. Throws std::runtime_error("enumeration budget exceeded") when more
// than `budget` words would be visited.
void enum_shapes(long max_extrema, long max_levels,
                 const std::function<bool(const ShapeWord&)>& visit,
                 long budget = 50000000);

// Distinct spectra over the enumerated shapes.
std::set<std::set<long>> achievable_sets(long max_extrema, long max_levels,
                                         long budget = 50000000);

struct DifferentialReport {
  // enumerated spectra rejected by decide_analytic, with an offending shape
  std::vector<std::pair<std::set<long>, ShapeWord>> soundness_gaps;
  // decide-accepted sets within the count range not found by enumeration
  std::vector<std::set<long>> completeness_gaps;  // advisory only
  long shapes = 0;
  long spectra = 0;

  bool sound() const { return soundness_gaps.empty(); }
};

DifferentialReport differential_thm2(long max_extrema, long max_levels,
                                     long budget = 50000000);

// Endpoint roles for a level composition.
enum class EndpointRole { None, Min, Max };

// Synthesizes a local piecewise linear configuration with the given interior
// minima/maxima counts and endpoint roles at one level, measures its
// (below, at, above) counts, classifies the triple and checks it against the
// only-if classification table. Throws on unrealizable compositions and on
// balanced compositions that belong to no class.
TripleClass classification_cases(long interior_minima, long interior_maxima,
                                 EndpointRole left, EndpointRole right);

}  // namespace omegaforge

#endif
