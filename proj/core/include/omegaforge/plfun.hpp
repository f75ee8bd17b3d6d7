#ifndef OMEGAFORGE_PLFUN_HPP
#define OMEGAFORGE_PLFUN_HPP

#include <optional>
#include <set>
#include <vector>

#include "omegaforge/sturm.hpp"

namespace omegaforge {

// Cardinality of a preimage set; kInfCard marks an infinite fiber.
constexpr long kInfCard = -1;

// Piecewise linear function on [domain_lo, domain_hi]: straight segments
// between breakpoints, consecutive equal y values form a plateau.
struct PLFunction {
  std::vector<std::pair<Rat, Rat>> breakpoints;  // x strictly increasing

  const Rat& domain_lo() const { return breakpoints.front().first; }
  const Rat& domain_hi() const { return breakpoints.back().first; }
  const Rat& value_at_lo() const { return breakpoints.front().second; }
  const Rat& value_at_hi() const { return breakpoints.back().second; }

  Rat eval(const Rat& x) const;
  void validate() const;  // throws std::invalid_argument on malformed data
};

PLFunction make_pl(std::vector<std::pair<Rat, Rat>> breakpoints);

// |f^-1(y)|; kInfCard iff y is a plateau value.
long count_at(const PLFunction& f, const Rat& y);

// A level value: exact rational, or an isolating interval for an algebraic
// value (only polynomial profiles produce the latter).
struct LevelValue {
  bool exact = true;
  Rat value;        // meaningful when exact
  IsolInterval box; // meaningful when !exact

  Rat sample() const { return exact ? value : box.midpoint(); }
};

struct LevelEntry {
  LevelValue value;
  long count = 0;  // kInfCard for plateaus
  int endpoint_hits = 0;
};

// Ordered level/band structure: levels ascending, bands[i] is the constant
// count on the open interval below levels[i]; bands.front() and bands.back()
// are the unbounded outer bands (always zero).
struct OmegaProfile {
  std::vector<LevelEntry> levels;
  std::vector<long> bands;  // size levels.size() + 1

  std::set<long> count_set() const;  // finite counts (includes 0)
  bool has_infinite() const;
};

OmegaProfile omega_pl(const PLFunction& f);

// Sequence (x0, x1, ..., x2m): even entries band counts, odd entries level
// counts, in ascending level order; x0 = x2m = 0.
struct ExtremaSequence {
  std::vector<long> values;
};

ExtremaSequence extract_sequence(const OmegaProfile& profile);

// Replaces host by patch on the patch's domain. Boundary values must agree.
PLFunction amend_pl(const PLFunction& host, const PLFunction& patch);
PLFunction amend_pl(const PLFunction& host,
                    const std::vector<PLFunction>& patches);

// Lemma-style refinement: splits the count step (n, n+k, n+2k) across
// (y1, y2, y3) into (n, n+r, n+2r, n+2r+s, n+2k) at (y1, z1, y2, z2, y3),
// r + s = k, leaving f unchanged outside f^-1([y1, y3]).
PLFunction lemma1_refine(const PLFunction& f, const Rat& y1, const Rat& y2,
                         const Rat& y3, long r, long s);

}  // namespace omegaforge

#endif
