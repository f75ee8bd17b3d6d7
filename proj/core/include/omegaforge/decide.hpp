#ifndef OMEGAFORGE_DECIDE_HPP
#define OMEGAFORGE_DECIDE_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omegaforge/plfun.hpp"

namespace omegaforge {

// Finitely described target set S: finite base, optional arithmetic
// progression tail, optional infinity marker. Membership is the union.
struct CardinalitySpec {
  std::set<long> base;
  struct Tail {
    long start = 0;
    long step = 1;  // positive
  };
  std::optional<Tail> tail;
  bool includes_infinity = false;

  bool contains(long n) const;
  bool is_finite() const { return !tail.has_value(); }
  bool unbounded() const { return tail.has_value(); }
  // All members <= bound, ascending.
  std::vector<long> members_up_to(long bound) const;
  std::string str() const;
};

// Text syntax: "{0,2,3,4}", tails as "{0,3,+2...}", infinity as "inf".
std::optional<CardinalitySpec> parse_spec(const std::string& text,
                                          std::string* error = nullptr);

// m1 = min(S \ {0}); m2 = max S, kInfCard when S is unbounded.
std::pair<long, long> minmax(const CardinalitySpec& s);

// Theorem-1 test: true iff m2 >= 2*m1 - 1 (infinity beats everything).
bool decide_continuous(const CardinalitySpec& s);

enum class TripleClass { APlus, AMinus, BPlus, BMinus, CPlus, CMinus };

char triple_family(TripleClass c);  // 'A', 'B' or 'C'
std::string triple_class_name(TripleClass c);

// Canonical classification of (below, at, above). The plus/minus variants
// coincide when at == below; the minus label is reported then, keeping the
// result single-valued. Empty when the triple belongs to no class.
std::vector<TripleClass> classify_triple(long n, long mid, long end);

// Every (family, k)-parameterization that literally admits the triple.
std::vector<TripleClass> admissible_classes(long n, long mid, long end);

struct SequenceWitness {
  ExtremaSequence sequence;
  std::vector<TripleClass> classes;  // one per consecutive triple
};

// Independent re-validation of Theorem-2 conditions i-v for S.
bool check_sequence_conditions(const ExtremaSequence& seq,
                               const CardinalitySpec& s,
                               std::string* why = nullptr);

// Breadth-first search for a shortest (then lexicographically smallest)
// sequence satisfying conditions i-v. Empty optional = reject.
std::optional<SequenceWitness> decide_analytic(const CardinalitySpec& s);

// Accepting sequences in (length, lex) order, at most `limit` of them.
std::vector<SequenceWitness> enumerate_accepting_sequences(
    const CardinalitySpec& s, size_t limit);

// Accepted sequence together with a piecewise linear realization whose
// spectrum has been verified to equal S. Iterates over accepting sequences
// until one builds.
std::pair<SequenceWitness, PLFunction> decide_analytic_with_witness(
    const CardinalitySpec& s);

}  // namespace omegaforge

#endif
