#ifndef OMEGAFORGE_WAVES_HPP
#define OMEGAFORGE_WAVES_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omegaforge/decide.hpp"
#include "omegaforge/plfun.hpp"

namespace omegaforge {

// Signature of a stair: the list of wave orders of its blocks.
struct SignatureDescr {
  enum class Kind { Constant, Pair, Periodic };
  Kind kind = Kind::Constant;
  long k = 1;                  // Constant
  long p = 1, q = 1;           // Pair: orders below / above the pivot value
  std::vector<long> word;      // Periodic: block i gets word[i mod size]

  void validate() const;  // orders odd >= 1, word nonempty
};

struct ConstructTree;
using TreePtr = std::shared_ptr<const ConstructTree>;

// Symbolic description of the continuous constructions. Every node knows its
// x-domain [xa, xb]; stairs and waves are ascending, AffineMap供 reflections.
struct ConstructTree {
  enum class Kind {
    Segment,   // straight line (xa,ya)-(xb,yb), any slope
    Plateau,   // constant value
    Wave,      // n-wave: n monotone pieces alternating between m and M
    InfStair,  // infinite stair, blocks dyadic toward both domain ends
    Stack,     // stacked constant-signature stairs, tiles dyadic toward top
    StrandStair,  // monotone run with interior pivot junctions
    Concat,    // x-contiguous parts, values agree at the joints
    Amend,     // host with patches on subintervals, seam values agree
    Affine     // x/y affine image of a subtree
  };

  Kind kind;
  Rat xa, xb;

  // Segment / Plateau
  Rat ya, yb;

  // Wave
  long wave_n = 1;
  Rat wave_m, wave_M;

  // InfStair / Stack / StrandStair share the value range [c, d]
  Rat c, d;
  SignatureDescr sig;          // InfStair
  Rat pivot;                   // InfStair pair signature: pivot value

  // Stack: tile j >= 0 is a constant stair of order orders(j)
  std::vector<long> stack_head;
  std::optional<std::pair<long, long>> stack_tail;  // (start, step)

  // StrandStair: cuts c = v0 < v1 < ... < vt = d, slab i carries sigmas[i];
  // the first and last slabs accumulate toward the outer ends, interior
  // slabs are two equal blocks, junctions at the cuts are pivot junctions.
  std::vector<Rat> cuts;
  std::vector<long> sigmas;
  bool descending = false;  // StrandStair only: x-reflected layout

  // Concat / Amend
  std::vector<TreePtr> parts;   // Concat parts, or Amend patches
  TreePtr host;                 // Amend

  // Affine: value(x) = y_scale * sub((x - x_off) / x_scale) + y_off
  TreePtr sub;
  Rat x_scale, x_off, y_scale, y_off;
};

TreePtr mk_segment(const Rat& xa, const Rat& ya, const Rat& xb, const Rat& yb);
TreePtr mk_plateau(const Rat& xa, const Rat& xb, const Rat& value);
// Rising n-wave on [xa, xb] with turning values mated at even indices
// (including the left endpoint) and M at odd indices.
TreePtr mk_wave(long n, const Rat& xa, const Rat& xb, const Rat& m,
                const Rat& M);
TreePtr mk_infstair(const SignatureDescr& sig, const Rat& xa, const Rat& xb,
                    const Rat& c, const Rat& d);
// Finite stair: blocks tile the domain on equal splits with nondecreasing
// value sub-ranges sharing their junction values.
TreePtr mk_stair(const std::vector<long>& orders, const Rat& xa, const Rat& xb,
                 const Rat& c, const Rat& d);
TreePtr mk_infstair_pivot(long p, long q, const Rat& pivot, const Rat& xa,
                          const Rat& xb, const Rat& c, const Rat& d);
TreePtr mk_stack(const Rat& xa, const Rat& xb, const Rat& c, const Rat& d,
                 std::vector<long> head,
                 std::optional<std::pair<long, long>> tail);
TreePtr mk_strand_stair(const Rat& xa, const Rat& xb, std::vector<Rat> cuts,
                        std::vector<long> sigmas, bool descending);
TreePtr mk_concat(std::vector<TreePtr> parts);
TreePtr mk_amend(TreePtr host, std::vector<TreePtr> patches);
TreePtr mk_affine(TreePtr sub, const Rat& x_scale, const Rat& x_off,
                  const Rat& y_scale, const Rat& y_off);

// Address of one monotone piece: block index, then 1-based leaf index.
struct LeafAddress {
  long block = 0;
  long leaf = 1;
};

// Order of the block an InfStair uses at the given index.
long signature_order_at(const SignatureDescr& sig, long block);

// Support interval of one leaf of a stair block: the x-range of the
// address's monotone piece. Works for InfStair nodes.
std::pair<Rat, Rat> leaf_support(const TreePtr& stair, const LeafAddress& at);

Rat tree_value_at(const TreePtr& t, const Rat& x);
// Exact |f^-1(y)| restricted to [lo, hi] (closed); kInfCard on plateaus.
long tree_count_in(const TreePtr& t, const Rat& y, const Rat& lo,
                   const Rat& hi);
long tree_count_at(const TreePtr& t, const Rat& y);

// Value range [min, max] of the tree.
std::pair<Rat, Rat> tree_range(const TreePtr& t);

// Spectrum of a symbolic tree: finite counts, arithmetic tails of counts,
// and an infinity flag.
struct OmegaSet {
  std::set<long> finite;
  std::vector<std::pair<long, long>> tails;  // (start, step) progressions
  bool has_inf = false;

  bool contains(long n) const;
  bool matches(const CardinalitySpec& s) const;
  std::string str() const;
};

// Enumerates the finite regime list of the tree (band classes, junction
// classes, special levels), validates every class by count_at at a
// representative level, and returns the exact spectrum. Throws
// std::logic_error on an incomplete regime enumeration, never returns a
// wrong answer.
OmegaSet omega_sym(const TreePtr& t);

// Piecewise linear approximation truncating each infinite structure to
// `depth` blocks per side; NOT spectrum faithful.
PLFunction materialize(const TreePtr& t, long depth, long samples_per_leaf);

}  // namespace omegaforge

#endif
