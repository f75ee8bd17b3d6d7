#ifndef OMEGAFORGE_POLYREAL_HPP
#define OMEGAFORGE_POLYREAL_HPP

#include "omegaforge/decide.hpp"
#include "omegaforge/plfun.hpp"

namespace omegaforge {

// Ordered level structure of a polynomial on [0, 1]: critical levels hit by
// critical points inside the interval, merged with the endpoint values.
struct LevelStructure {
  std::vector<LevelEntry> levels;  // ascending; counts not yet filled
};

// Critical points of p isolated inside [0,1], their values matched to the
// distinct roots of the critical-level polynomial, endpoint coincidences
// decided exactly by sign evaluation. Requires deg p >= 2.
LevelStructure restrict_critical_levels(const RatPoly& p);

// Exact spectrum profile of p on [0, 1]. Constant p reports a plateau.
OmegaProfile omega_poly(const RatPoly& p);

// Least-degree polynomial matching the given values, with zero first
// derivative where flat is set. Errors on duplicate abscissae.
struct HermiteNode {
  Rat x;
  Rat value;
  bool flat = false;
};
RatPoly hermite_fit(const std::vector<HermiteNode>& nodes);

struct VerificationReport {
  bool exact = false;
  std::set<long> computed_spectrum;
  double max_residual = 0.0;  // float-stage constraint violation
  std::string note;
};

struct PolyWitness {
  RatPoly poly;
  CardinalitySpec target;
  VerificationReport report;
};

// Best-effort realization of an accepted spectrum by an explicit polynomial
// with exact verification: builds a piecewise linear witness, fits a
// polynomial whose derivative has exactly the prescribed roots, refines the
// free abscissae numerically, rationalizes, and verifies with omega_poly.
// Distinct-level witnesses and mirror-symmetric witnesses verify exactly;
// anything else may come back unverified, never falsely exact.
PolyWitness realize_poly(const CardinalitySpec& target);
PolyWitness realize_poly(const ExtremaSequence& seq);

}  // namespace omegaforge

#endif
