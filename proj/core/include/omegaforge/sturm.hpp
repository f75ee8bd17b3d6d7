#ifndef OMEGAFORGE_STURM_HPP
#define OMEGAFORGE_STURM_HPP

#include <vector>

#include "omegaforge/ratpoly.hpp"

namespace omegaforge {

// Sturm chain of the squarefree part of the source polynomial. First entry
// is the squarefree part, each following entry the negated remainder of the
// two preceding, last entry a nonzero constant.
struct SturmChain {
  std::vector<RatPoly> polys;

  // Sign variations of the chain at x, zeros skipped.
  int variations(const Rat& x) const;
};

SturmChain sturm_chain(const RatPoly& p);

// Number of distinct real roots of p in the half-open interval (a, b].
// Additive over adjacent intervals.
long count_roots(const RatPoly& p, const Rat& a, const Rat& b);
long count_roots(const SturmChain& chain, const Rat& a, const Rat& b);

// Rational-endpoint interval certified to contain exactly one distinct real
// root of the referenced polynomial. lo == hi marks an exact rational root.
struct IsolInterval {
  Rat lo;
  Rat hi;
  int multiplicity = 1;

  bool is_point() const { return lo == hi; }
  Rat midpoint() const { return (lo + hi) / 2; }
};

// Disjoint isolating intervals, one per distinct root of p in [a, b],
// in ascending order, with multiplicities from the squarefree decomposition.
std::vector<IsolInterval> isolate_roots(const RatPoly& p, const Rat& a,
                                        const Rat& b);

// Shrinks an isolating interval of (squarefree) p below the given width.
IsolInterval refine_interval(const RatPoly& squarefree_p, IsolInterval iv,
                             const Rat& width);

// Nonzero polynomial in y whose real roots include every critical value of p
// over R: the eliminant of p(x) - y and p'(x) in x. Requires deg p >= 2.
RatPoly critical_level_poly(const RatPoly& p);

}  // namespace omegaforge

#endif
