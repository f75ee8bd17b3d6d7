#include "omegaforge/waves.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace omegaforge {

namespace {

TreePtr make_node(ConstructTree&& n) {
  return std::make_shared<const ConstructTree>(std::move(n));
}

void check_odd_order(long k) {
  if (k < 1 || k % 2 == 0)
    throw std::invalid_argument("stair orders must be odd and >= 1");
}

// Two-sided dyadic sigmoid: bnd(0) = 1/2, bnd(i) = 2^(i-1) for i <= 0,
// bnd(i) = 1 - 2^(-i-1) for i >= 1. Blocks accumulate at 0 and 1.
Rat sigmoid(long i) {
  Rat half = make_rat(1, 2);
  Rat b = half;
  if (i <= 0) {
    for (long j = 0; j > i; --j) b /= 2;
    return b;
  }
  Rat w = half;
  for (long j = 0; j < i; ++j) w /= 2;
  return Rat(1) - w;
}

struct DyadicLoc {
  long block;
  bool at_boundary;  // u == bnd(block)
};

// block i with bnd(i) <= u < bnd(i+1), for u strictly inside (0, 1)
DyadicLoc dyadic_locate(const Rat& u) {
  Rat half = make_rat(1, 2);
  if (u == half) return {0, true};
  if (u < half) {
    Rat b = half;
    long i = 0;
    while (u < b) {
      b /= 2;
      --i;
    }
    return {i, u == b};
  }
  Rat b = half, w = make_rat(1, 4);
  long i = 0;
  while (u >= Rat(1) - w) {
    b = Rat(1) - w;
    w /= 2;
    ++i;
  }
  return {i, u == b};
}

// One-sided partitions used by pair stairs, stacks and strand stairs.
// Lower: bnd(i) = 2^i for i <= 0 (accumulates at 0, full block ends at 1).
DyadicLoc lower_locate(const Rat& u) {  // u in (0, 1); blocks i <= -1
  Rat b(1);
  long i = 0;
  while (u < b) {
    b /= 2;
    --i;
  }
  return {i, u == b};
}
Rat lower_bnd(long i) {
  Rat b(1);
  for (long j = 0; j > i; --j) b /= 2;
  return b;
}
// Upper: bnd(i) = 1 - 2^-i for i >= 0 (full block starts at 0, accumulates
// at 1).
DyadicLoc upper_locate(const Rat& u) {  // u in (0, 1); blocks i >= 0
  Rat bb(0);
  Rat w(1);
  long i = 0;
  while (true) {
    Rat nb = Rat(1) - w / 2;  // bnd(i+1)
    if (u < nb) return {i, u == bb};
    bb = nb;
    w /= 2;
    ++i;
  }
}
Rat upper_bnd(long i) {
  Rat w(1);
  for (long j = 0; j < i; ++j) w /= 2;
  return Rat(1) - w;
}

Rat lerp(const Rat& a, const Rat& b, const Rat& t) { return a + (b - a) * t; }
Rat inv_lerp(const Rat& a, const Rat& b, const Rat& v) {
  return (v - a) / (b - a);
}

// Counts of a rising n-wave on box [xa,xb] x [m,M] at level y, clipped.
long wave_count(long n, const Rat& xa, const Rat& xb, const Rat& m,
                const Rat& M, const Rat& y, const Rat& lo, const Rat& hi) {
  if (y < m || y > M) return 0;
  long cnt = 0;
  Rat w = (xb - xa) / Rat(n);
  if (y == m || y == M) {
    long parity = (y == m) ? 0 : 1;
    for (long i = 0; i <= n; ++i) {
      if (i % 2 != parity) continue;
      Rat x = xa + w * Rat(i);
      if (lo <= x && x <= hi) ++cnt;
    }
    return cnt;
  }
  for (long i = 0; i < n; ++i) {
    Rat x0 = xa + w * Rat(i), x1 = x0 + w;
    Rat v0 = (i % 2 == 0) ? m : M;
    Rat v1 = (i % 2 == 0) ? M : m;
    Rat x = x0 + (x1 - x0) * (y - v0) / (v1 - v0);
    if (lo <= x && x <= hi) ++cnt;
  }
  return cnt;
}

Rat wave_value(long n, const Rat& xa, const Rat& xb, const Rat& m,
               const Rat& M, const Rat& x) {
  Rat w = (xb - xa) / Rat(n);
  Rat t = (x - xa) / w;
  Int fi = floor_int(t);
  long i = fi.get_si();
  if (i >= n) i = n - 1;
  if (i < 0) i = 0;
  Rat x0 = xa + w * Rat(i);
  Rat v0 = (i % 2 == 0) ? m : M;
  Rat v1 = (i % 2 == 0) ? M : m;
  return v0 + (v1 - v0) * (x - x0) / w;
}

// Hits of the k-wave sitting just above a junction boundary, skipping the
// shared first turning point.
long upper_block_bottom_hits(long order, const Rat& bx0, const Rat& bx1,
                             const Rat& lo, const Rat& hi) {
  long cnt = 0;
  Rat w = (bx1 - bx0) / Rat(order);
  for (long i = 2; i <= order; i += 2) {
    Rat x = bx0 + w * Rat(i);
    if (lo <= x && x <= hi) ++cnt;
  }
  return cnt;
}

// A constant- or periodic-order ascending stair on box [xa,xb] x [c,d] with
// the two-sided dyadic partition.
struct StairView {
  Rat xa, xb, c, d;
  const SignatureDescr* sig = nullptr;  // null means constant k
  long k = 1;

  long order(long i) const { return sig ? signature_order_at(*sig, i) : k; }
  Rat xbnd(long i) const { return lerp(xa, xb, sigmoid(i)); }
  Rat vbnd(long i) const { return lerp(c, d, sigmoid(i)); }

  long count(const Rat& y, const Rat& lo, const Rat& hi) const {
    if (y < c || y > d) return 0;
    if (y == c) return (lo <= xa && xa <= hi) ? 1 : 0;
    if (y == d) return (lo <= xb && xb <= hi) ? 1 : 0;
    DyadicLoc loc = dyadic_locate(inv_lerp(c, d, y));
    if (loc.at_boundary) {
      long cnt = wave_count(order(loc.block - 1), xbnd(loc.block - 1),
                            xbnd(loc.block), vbnd(loc.block - 1),
                            vbnd(loc.block), y, lo, hi);
      cnt += upper_block_bottom_hits(order(loc.block), xbnd(loc.block),
                                     xbnd(loc.block + 1), lo, hi);
      return cnt;
    }
    return wave_count(order(loc.block), xbnd(loc.block), xbnd(loc.block + 1),
                      vbnd(loc.block), vbnd(loc.block + 1), y, lo, hi);
  }

  Rat value(const Rat& x) const {
    if (x == xa) return c;
    if (x == xb) return d;
    DyadicLoc loc = dyadic_locate(inv_lerp(xa, xb, x));
    if (loc.at_boundary) return vbnd(loc.block);
    return wave_value(order(loc.block), xbnd(loc.block), xbnd(loc.block + 1),
                      vbnd(loc.block), vbnd(loc.block + 1), x);
  }
};

// Pair stair with an explicit pivot value: p-blocks fill [c, pivot] and
// accumulate at c, q-blocks fill [pivot, d] and accumulate at d; both sides
// put a full block against the pivot, so the pivot is a junction level.
struct PairView {
  Rat xa, xb, c, d, pivot, xpiv;
  long p, q;

  Rat lo_vbnd(long i) const { return lerp(c, pivot, lower_bnd(i)); }
  Rat lo_xbnd(long i) const { return lerp(xa, xpiv, lower_bnd(i)); }
  Rat up_vbnd(long i) const { return lerp(pivot, d, upper_bnd(i)); }
  Rat up_xbnd(long i) const { return lerp(xpiv, xb, upper_bnd(i)); }

  long count(const Rat& y, const Rat& lo, const Rat& hi) const {
    if (y < c || y > d) return 0;
    if (y == c) return (lo <= xa && xa <= hi) ? 1 : 0;
    if (y == d) return (lo <= xb && xb <= hi) ? 1 : 0;
    if (y == pivot) {
      long cnt = wave_count(p, lo_xbnd(-1), lo_xbnd(0), lo_vbnd(-1),
                            lo_vbnd(0), y, lo, hi);
      cnt += upper_block_bottom_hits(q, up_xbnd(0), up_xbnd(1), lo, hi);
      return cnt;
    }
    if (y < pivot) {
      DyadicLoc loc = lower_locate(inv_lerp(c, pivot, y));
      if (loc.at_boundary) {
        long cnt = wave_count(p, lo_xbnd(loc.block - 1), lo_xbnd(loc.block),
                              lo_vbnd(loc.block - 1), lo_vbnd(loc.block), y,
                              lo, hi);
        cnt += upper_block_bottom_hits(p, lo_xbnd(loc.block),
                                       lo_xbnd(loc.block + 1), lo, hi);
        return cnt;
      }
      return wave_count(p, lo_xbnd(loc.block), lo_xbnd(loc.block + 1),
                        lo_vbnd(loc.block), lo_vbnd(loc.block + 1), y, lo, hi);
    }
    DyadicLoc loc = upper_locate(inv_lerp(pivot, d, y));
    if (loc.at_boundary && loc.block > 0) {
      long cnt = wave_count(q, up_xbnd(loc.block - 1), up_xbnd(loc.block),
                            up_vbnd(loc.block - 1), up_vbnd(loc.block), y, lo,
                            hi);
      cnt += upper_block_bottom_hits(q, up_xbnd(loc.block),
                                     up_xbnd(loc.block + 1), lo, hi);
      return cnt;
    }
    return wave_count(q, up_xbnd(loc.block), up_xbnd(loc.block + 1),
                      up_vbnd(loc.block), up_vbnd(loc.block + 1), y, lo, hi);
  }

  Rat value(const Rat& x) const {
    if (x == xa) return c;
    if (x == xb) return d;
    if (x == xpiv) return pivot;
    if (x < xpiv) {
      DyadicLoc loc = lower_locate(inv_lerp(xa, xpiv, x));
      if (loc.at_boundary) return lo_vbnd(loc.block);
      return wave_value(p, lo_xbnd(loc.block), lo_xbnd(loc.block + 1),
                        lo_vbnd(loc.block), lo_vbnd(loc.block + 1), x);
    }
    DyadicLoc loc = upper_locate(inv_lerp(xpiv, xb, x));
    if (loc.at_boundary && loc.block > 0) return up_vbnd(loc.block);
    return wave_value(q, up_xbnd(loc.block), up_xbnd(loc.block + 1),
                      up_vbnd(loc.block), up_vbnd(loc.block + 1), x);
  }
};

PairView pair_view(const ConstructTree& t) {
  Rat frac = inv_lerp(t.c, t.d, t.pivot);
  return PairView{t.xa,    t.xb,
                  t.c,     t.d,
                  t.pivot, lerp(t.xa, t.xb, frac),
                  t.sig.p, t.sig.q};
}

long stack_order(const ConstructTree& t, long j) {
  long h = static_cast<long>(t.stack_head.size());
  if (j < h) return t.stack_head[j];
  if (t.stack_tail) return t.stack_tail->first + (j - h) * t.stack_tail->second;
  return t.stack_head[j % h];
}

// StrandStair slab geometry: slab i spans values [cuts[i], cuts[i+1]] and a
// proportional x-interval; for a descending strand the x layout is mirrored.
struct SlabGeom {
  Rat x0, x1, v0, v1;  // x0 < x1, v0 < v1
  bool x_reversed;     // true when values descend from x0 to x1
};

SlabGeom slab_geom(const ConstructTree& t, size_t i) {
  Rat span = t.cuts.back() - t.cuts.front();
  Rat f0 = (t.cuts[i] - t.cuts.front()) / span;
  Rat f1 = (t.cuts[i + 1] - t.cuts.front()) / span;
  if (!t.descending)
    return {lerp(t.xa, t.xb, f0), lerp(t.xa, t.xb, f1), t.cuts[i],
            t.cuts[i + 1], false};
  return {lerp(t.xa, t.xb, Rat(1) - f1), lerp(t.xa, t.xb, Rat(1) - f0),
          t.cuts[i], t.cuts[i + 1], true};
}

// Slab content as an ascending structure on [A,B] x [v0,v1]; the slab at an
// outer end of the strand accumulates toward that end, interior slabs are
// two equal blocks so that every cut is met by full blocks on both sides.
struct SlabView {
  Rat A, B, v0, v1;
  long sg;
  bool acc_bottom, acc_top;

  long count(const Rat& y, const Rat& lo, const Rat& hi) const {
    if (y < v0 || y > v1) return 0;
    if (acc_bottom && acc_top) {
      StairView sv{A, B, v0, v1, nullptr, sg};
      return sv.count(y, lo, hi);
    }
    Rat vm = lerp(v0, v1, make_rat(1, 2));
    Rat xm = lerp(A, B, make_rat(1, 2));
    if (acc_bottom) {
      if (y == v0) return (lo <= A && A <= hi) ? 1 : 0;
      DyadicLoc loc = y == v1 ? DyadicLoc{0, true}
                              : lower_locate(inv_lerp(v0, v1, y));
      auto vb = [&](long j) { return lerp(v0, v1, lower_bnd(j)); };
      auto xbn = [&](long j) { return lerp(A, B, lower_bnd(j)); };
      if (y == v1)
        return wave_count(sg, xbn(-1), xbn(0), vb(-1), vb(0), y, lo, hi);
      if (loc.at_boundary) {
        long cnt = wave_count(sg, xbn(loc.block - 1), xbn(loc.block),
                              vb(loc.block - 1), vb(loc.block), y, lo, hi);
        cnt += upper_block_bottom_hits(sg, xbn(loc.block), xbn(loc.block + 1),
                                       lo, hi);
        return cnt;
      }
      return wave_count(sg, xbn(loc.block), xbn(loc.block + 1), vb(loc.block),
                        vb(loc.block + 1), y, lo, hi);
    }
    if (acc_top) {
      if (y == v1) return (lo <= B && B <= hi) ? 1 : 0;
      auto vb = [&](long j) { return lerp(v0, v1, upper_bnd(j)); };
      auto xbn = [&](long j) { return lerp(A, B, upper_bnd(j)); };
      if (y == v0)
        return wave_count(sg, xbn(0), xbn(1), vb(0), vb(1), y, lo, hi);
      DyadicLoc loc = upper_locate(inv_lerp(v0, v1, y));
      if (loc.at_boundary && loc.block > 0) {
        long cnt = wave_count(sg, xbn(loc.block - 1), xbn(loc.block),
                              vb(loc.block - 1), vb(loc.block), y, lo, hi);
        cnt += upper_block_bottom_hits(sg, xbn(loc.block), xbn(loc.block + 1),
                                       lo, hi);
        return cnt;
      }
      return wave_count(sg, xbn(loc.block), xbn(loc.block + 1), vb(loc.block),
                        vb(loc.block + 1), y, lo, hi);
    }
    // interior slab, two equal blocks
    if (y == v0) return wave_count(sg, A, xm, v0, vm, y, lo, hi);
    if (y == v1) return wave_count(sg, xm, B, vm, v1, y, lo, hi);
    if (y == vm) {
      long cnt = wave_count(sg, A, xm, v0, vm, y, lo, hi);
      cnt += upper_block_bottom_hits(sg, xm, B, lo, hi);
      return cnt;
    }
    if (y < vm) return wave_count(sg, A, xm, v0, vm, y, lo, hi);
    return wave_count(sg, xm, B, vm, v1, y, lo, hi);
  }

  Rat value(const Rat& x) const {
    if (x == A) return acc_bottom ? v0 : wave_value(sg, A, lerp(A, B, make_rat(1, 2)), v0, lerp(v0, v1, make_rat(1, 2)), x);
    if (x == B) return acc_top ? v1 : wave_value(sg, lerp(A, B, make_rat(1, 2)), B, lerp(v0, v1, make_rat(1, 2)), v1, x);
    if (acc_bottom && acc_top) {
      StairView sv{A, B, v0, v1, nullptr, sg};
      return sv.value(x);
    }
    Rat xm = lerp(A, B, make_rat(1, 2));
    Rat vm = lerp(v0, v1, make_rat(1, 2));
    if (acc_bottom) {
      DyadicLoc loc = lower_locate(inv_lerp(A, B, x));
      auto vb = [&](long j) { return lerp(v0, v1, lower_bnd(j)); };
      auto xbn = [&](long j) { return lerp(A, B, lower_bnd(j)); };
      if (loc.at_boundary) return vb(loc.block);
      return wave_value(sg, xbn(loc.block), xbn(loc.block + 1), vb(loc.block),
                        vb(loc.block + 1), x);
    }
    if (acc_top) {
      DyadicLoc loc = upper_locate(inv_lerp(A, B, x));
      auto vb = [&](long j) { return lerp(v0, v1, upper_bnd(j)); };
      auto xbn = [&](long j) { return lerp(A, B, upper_bnd(j)); };
      if (loc.at_boundary && loc.block > 0) return vb(loc.block);
      return wave_value(sg, xbn(loc.block), xbn(loc.block + 1), vb(loc.block),
                        vb(loc.block + 1), x);
    }
    if (x <= xm) return wave_value(sg, A, xm, v0, vm, x);
    return wave_value(sg, xm, B, vm, v1, x);
  }
};

SlabView slab_view(const ConstructTree& t, size_t i) {
  SlabGeom g = slab_geom(t, i);
  // the internal layout is always ascending; descending strands are
  // handled by mirroring the clip, which keeps the bottom-value end left
  bool acc_bottom = (i == 0);
  bool acc_top = (i + 1 == t.sigmas.size());
  return SlabView{g.x0, g.x1, g.v0, g.v1, t.sigmas[i], acc_bottom, acc_top};
}

}  // namespace

void SignatureDescr::validate() const {
  switch (kind) {
    case Kind::Constant:
      check_odd_order(k);
      break;
    case Kind::Pair:
      check_odd_order(p);
      check_odd_order(q);
      break;
    case Kind::Periodic:
      if (word.empty()) throw std::invalid_argument("empty periodic signature");
      for (long w : word) check_odd_order(w);
      break;
  }
}

long signature_order_at(const SignatureDescr& sig, long block) {
  switch (sig.kind) {
    case SignatureDescr::Kind::Constant:
      return sig.k;
    case SignatureDescr::Kind::Pair:
      return block < 0 ? sig.p : sig.q;
    case SignatureDescr::Kind::Periodic: {
      long n = static_cast<long>(sig.word.size());
      long idx = ((block % n) + n) % n;
      return sig.word[idx];
    }
  }
  return 1;
}

TreePtr mk_segment(const Rat& xa, const Rat& ya, const Rat& xb, const Rat& yb) {
  if (!(xa < xb)) throw std::invalid_argument("empty segment domain");
  if (ya == yb)
    throw std::invalid_argument("constant segment; use a plateau node");
  ConstructTree t;
  t.kind = ConstructTree::Kind::Segment;
  t.xa = xa;
  t.xb = xb;
  t.ya = ya;
  t.yb = yb;
  return make_node(std::move(t));
}

TreePtr mk_plateau(const Rat& xa, const Rat& xb, const Rat& value) {
  if (!(xa < xb)) throw std::invalid_argument("empty plateau domain");
  ConstructTree t;
  t.kind = ConstructTree::Kind::Plateau;
  t.xa = xa;
  t.xb = xb;
  t.ya = value;
  t.yb = value;
  return make_node(std::move(t));
}

TreePtr mk_wave(long n, const Rat& xa, const Rat& xb, const Rat& m,
                const Rat& M) {
  if (n < 1) throw std::invalid_argument("wave order must be >= 1");
  if (!(m < M)) throw std::invalid_argument("empty value range");
  if (!(xa < xb)) throw std::invalid_argument("empty wave domain");
  ConstructTree t;
  t.kind = ConstructTree::Kind::Wave;
  t.xa = xa;
  t.xb = xb;
  t.wave_n = n;
  t.wave_m = m;
  t.wave_M = M;
  return make_node(std::move(t));
}

TreePtr mk_infstair(const SignatureDescr& sig, const Rat& xa, const Rat& xb,
                    const Rat& c, const Rat& d) {
  sig.validate();
  if (!(c < d)) throw std::invalid_argument("empty value range");
  if (!(xa < xb)) throw std::invalid_argument("empty stair domain");
  ConstructTree t;
  t.kind = ConstructTree::Kind::InfStair;
  t.xa = xa;
  t.xb = xb;
  t.c = c;
  t.d = d;
  t.sig = sig;
  t.pivot = (c + d) / 2;
  return make_node(std::move(t));
}

TreePtr mk_stair(const std::vector<long>& orders, const Rat& xa, const Rat& xb,
                 const Rat& c, const Rat& d) {
  if (orders.empty()) throw std::invalid_argument("empty stair");
  for (long k : orders) check_odd_order(k);
  if (!(c < d)) throw std::invalid_argument("empty value range");
  long n = static_cast<long>(orders.size());
  std::vector<TreePtr> blocks;
  for (long i = 0; i < n; ++i) {
    Rat x0 = lerp(xa, xb, make_rat(i, n)), x1 = lerp(xa, xb, make_rat(i + 1, n));
    Rat v0 = lerp(c, d, make_rat(i, n)), v1 = lerp(c, d, make_rat(i + 1, n));
    blocks.push_back(mk_wave(orders[i], x0, x1, v0, v1));
  }
  return mk_concat(std::move(blocks));
}

std::pair<Rat, Rat> leaf_support(const TreePtr& stair, const LeafAddress& at) {
  if (stair->kind != ConstructTree::Kind::InfStair)
    throw std::invalid_argument("leaf addressing needs a stair node");
  if (stair->sig.kind == SignatureDescr::Kind::Pair)
    throw std::invalid_argument("leaf addressing on pair stairs unsupported");
  long order = signature_order_at(stair->sig, at.block);
  if (at.leaf < 1 || at.leaf > order)
    throw std::invalid_argument("leaf index exceeds the block order");
  Rat x0 = lerp(stair->xa, stair->xb, sigmoid(at.block));
  Rat x1 = lerp(stair->xa, stair->xb, sigmoid(at.block + 1));
  Rat w = (x1 - x0) / Rat(order);
  return {x0 + w * Rat(at.leaf - 1), x0 + w * Rat(at.leaf)};
}

TreePtr mk_infstair_pivot(long p, long q, const Rat& pivot, const Rat& xa,
                          const Rat& xb, const Rat& c, const Rat& d) {
  if (!(c < pivot && pivot < d))
    throw std::invalid_argument("pivot outside value range");
  SignatureDescr sig;
  sig.kind = SignatureDescr::Kind::Pair;
  sig.p = p;
  sig.q = q;
  sig.validate();
  ConstructTree t;
  t.kind = ConstructTree::Kind::InfStair;
  t.xa = xa;
  t.xb = xb;
  t.c = c;
  t.d = d;
  t.sig = sig;
  t.pivot = pivot;
  return make_node(std::move(t));
}

TreePtr mk_stack(const Rat& xa, const Rat& xb, const Rat& c, const Rat& d,
                 std::vector<long> head,
                 std::optional<std::pair<long, long>> tail) {
  for (long h : head) check_odd_order(h);
  if (tail) {
    check_odd_order(tail->first);
    if (tail->second <= 0 || tail->second % 2 != 0)
      throw std::invalid_argument("stack tail step must be even and positive");
  }
  if (head.empty() && !tail) throw std::invalid_argument("empty stack");
  if (!(c < d)) throw std::invalid_argument("empty value range");
  if (!(xa < xb)) throw std::invalid_argument("empty stack domain");
  ConstructTree t;
  t.kind = ConstructTree::Kind::Stack;
  t.xa = xa;
  t.xb = xb;
  t.c = c;
  t.d = d;
  t.stack_head = std::move(head);
  t.stack_tail = tail;
  return make_node(std::move(t));
}

TreePtr mk_strand_stair(const Rat& xa, const Rat& xb, std::vector<Rat> cuts,
                        std::vector<long> sigmas, bool descending) {
  if (cuts.size() < 2 || sigmas.size() + 1 != cuts.size())
    throw std::invalid_argument("strand stair shape mismatch");
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    if (!(cuts[i] < cuts[i + 1]))
      throw std::invalid_argument("strand stair cuts must ascend");
  for (long s : sigmas) check_odd_order(s);
  if (!(xa < xb)) throw std::invalid_argument("empty strand domain");
  ConstructTree t;
  t.kind = ConstructTree::Kind::StrandStair;
  t.xa = xa;
  t.xb = xb;
  t.c = cuts.front();
  t.d = cuts.back();
  t.cuts = std::move(cuts);
  t.sigmas = std::move(sigmas);
  t.descending = descending;
  return make_node(std::move(t));
}

TreePtr mk_concat(std::vector<TreePtr> parts) {
  if (parts.empty()) throw std::invalid_argument("empty concat");
  std::sort(parts.begin(), parts.end(),
            [](const TreePtr& a, const TreePtr& b) { return a->xa < b->xa; });
  for (size_t i = 0; i + 1 < parts.size(); ++i) {
    if (parts[i]->xb != parts[i + 1]->xa)
      throw std::invalid_argument("concat parts must tile the domain");
    if (tree_value_at(parts[i], parts[i]->xb) !=
        tree_value_at(parts[i + 1], parts[i + 1]->xa))
      throw std::invalid_argument("concat joint value mismatch");
  }
  ConstructTree t;
  t.kind = ConstructTree::Kind::Concat;
  t.xa = parts.front()->xa;
  t.xb = parts.back()->xb;
  t.parts = std::move(parts);
  return make_node(std::move(t));
}

TreePtr mk_amend(TreePtr host, std::vector<TreePtr> patches) {
  if (patches.empty()) throw std::invalid_argument("no patches");
  std::sort(patches.begin(), patches.end(),
            [](const TreePtr& a, const TreePtr& b) { return a->xa < b->xa; });
  for (size_t i = 0; i + 1 < patches.size(); ++i)
    if (!(patches[i]->xb <= patches[i + 1]->xa))
      throw std::invalid_argument("interiors not disjoint");
  for (const TreePtr& p : patches) {
    if (p->xa < host->xa || p->xb > host->xb)
      throw std::invalid_argument("patch domain outside host");
    if (tree_value_at(host, p->xa) != tree_value_at(p, p->xa) ||
        tree_value_at(host, p->xb) != tree_value_at(p, p->xb))
      throw std::invalid_argument("amendment seam violation");
  }
  ConstructTree t;
  t.kind = ConstructTree::Kind::Amend;
  t.xa = host->xa;
  t.xb = host->xb;
  t.host = std::move(host);
  t.parts = std::move(patches);
  return make_node(std::move(t));
}

TreePtr mk_affine(TreePtr sub, const Rat& x_scale, const Rat& x_off,
                  const Rat& y_scale, const Rat& y_off) {
  if (x_scale == 0 || y_scale == 0)
    throw std::invalid_argument("degenerate affine map");
  ConstructTree t;
  t.kind = ConstructTree::Kind::Affine;
  Rat u = sub->xa * x_scale + x_off;
  Rat v = sub->xb * x_scale + x_off;
  t.xa = std::min(u, v);
  t.xb = std::max(u, v);
  t.sub = std::move(sub);
  t.x_scale = x_scale;
  t.x_off = x_off;
  t.y_scale = y_scale;
  t.y_off = y_off;
  return make_node(std::move(t));
}

Rat tree_value_at(const TreePtr& t, const Rat& x) {
  if (x < t->xa || x > t->xb)
    throw std::invalid_argument("evaluation outside domain");
  switch (t->kind) {
    case ConstructTree::Kind::Segment:
      return t->ya + (t->yb - t->ya) * (x - t->xa) / (t->xb - t->xa);
    case ConstructTree::Kind::Plateau:
      return t->ya;
    case ConstructTree::Kind::Wave:
      if (x == t->xa) return t->wave_m;
      if (x == t->xb) return t->wave_n % 2 == 0 ? t->wave_m : t->wave_M;
      return wave_value(t->wave_n, t->xa, t->xb, t->wave_m, t->wave_M, x);
    case ConstructTree::Kind::InfStair: {
      if (t->sig.kind == SignatureDescr::Kind::Pair)
        return pair_view(*t).value(x);
      StairView sv{t->xa, t->xb, t->c, t->d, &t->sig, 0};
      return sv.value(x);
    }
    case ConstructTree::Kind::Stack: {
      if (x == t->xa) return t->c;
      if (x == t->xb) return t->d;
      DyadicLoc loc = upper_locate(inv_lerp(t->xa, t->xb, x));
      if (loc.at_boundary && loc.block > 0)
        return lerp(t->c, t->d, upper_bnd(loc.block));
      long j = loc.block;
      StairView sv{lerp(t->xa, t->xb, upper_bnd(j)),
                   lerp(t->xa, t->xb, upper_bnd(j + 1)),
                   lerp(t->c, t->d, upper_bnd(j)),
                   lerp(t->c, t->d, upper_bnd(j + 1)),
                   nullptr, stack_order(*t, j)};
      return sv.value(x);
    }
    case ConstructTree::Kind::StrandStair: {
      for (size_t i = 0; i < t->sigmas.size(); ++i) {
        SlabGeom g = slab_geom(*t, i);
        if (x < g.x0 || x > g.x1) continue;
        SlabView sv = slab_view(*t, i);
        Rat xx = t->descending ? g.x0 + g.x1 - x : x;
        return sv.value(xx);
      }
      throw std::logic_error("strand stair slab lookup failed");
    }
    case ConstructTree::Kind::Concat: {
      for (const TreePtr& p : t->parts)
        if (x <= p->xb) return tree_value_at(p, std::max(x, p->xa));
      return tree_value_at(t->parts.back(), x);
    }
    case ConstructTree::Kind::Amend: {
      for (const TreePtr& p : t->parts)
        if (p->xa <= x && x <= p->xb) return tree_value_at(p, x);
      return tree_value_at(t->host, x);
    }
    case ConstructTree::Kind::Affine: {
      Rat xs = (x - t->x_off) / t->x_scale;
      if (xs < t->sub->xa) xs = t->sub->xa;
      if (xs > t->sub->xb) xs = t->sub->xb;
      return tree_value_at(t->sub, xs) * t->y_scale + t->y_off;
    }
  }
  throw std::logic_error("unknown node");
}

long tree_count_in(const TreePtr& t, const Rat& y, const Rat& lo,
                   const Rat& hi) {
  Rat clo = std::max(lo, t->xa), chi = std::min(hi, t->xb);
  if (clo > chi) return 0;
  if (clo == chi) return tree_value_at(t, clo) == y ? 1 : 0;
  switch (t->kind) {
    case ConstructTree::Kind::Segment: {
      if (t->ya == t->yb) return t->ya == y ? 1 : 0;  // degenerate, not used
      const Rat &v0 = t->ya, &v1 = t->yb;
      if ((v0 <= y && y <= v1) || (v1 <= y && y <= v0)) {
        Rat x = t->xa + (t->xb - t->xa) * (y - v0) / (v1 - v0);
        return (clo <= x && x <= chi) ? 1 : 0;
      }
      return 0;
    }
    case ConstructTree::Kind::Plateau:
      return t->ya == y ? kInfCard : 0;
    case ConstructTree::Kind::Wave:
      return wave_count(t->wave_n, t->xa, t->xb, t->wave_m, t->wave_M, y, clo,
                        chi);
    case ConstructTree::Kind::InfStair: {
      if (t->sig.kind == SignatureDescr::Kind::Pair)
        return pair_view(*t).count(y, clo, chi);
      StairView sv{t->xa, t->xb, t->c, t->d, &t->sig, 0};
      return sv.count(y, clo, chi);
    }
    case ConstructTree::Kind::Stack: {
      if (y < t->c || y > t->d) return 0;
      if (y == t->d) return (clo <= t->xb && t->xb <= chi) ? 1 : 0;
      if (y == t->c) return (clo <= t->xa && t->xa <= chi) ? 1 : 0;
      DyadicLoc loc = upper_locate(inv_lerp(t->c, t->d, y));
      if (loc.at_boundary && loc.block > 0) {
        Rat x = lerp(t->xa, t->xb, upper_bnd(loc.block));
        return (clo <= x && x <= chi) ? 1 : 0;
      }
      long j = loc.block;
      StairView sv{lerp(t->xa, t->xb, upper_bnd(j)),
                   lerp(t->xa, t->xb, upper_bnd(j + 1)),
                   lerp(t->c, t->d, upper_bnd(j)),
                   lerp(t->c, t->d, upper_bnd(j + 1)),
                   nullptr, stack_order(*t, j)};
      return sv.count(y, clo, chi);
    }
    case ConstructTree::Kind::StrandStair: {
      if (y < t->c || y > t->d) return 0;
      long total = 0;
      for (size_t i = 0; i < t->sigmas.size(); ++i) {
        if (y < t->cuts[i] || y > t->cuts[i + 1]) continue;
        SlabGeom g = slab_geom(*t, i);
        SlabView sv = slab_view(*t, i);
        Rat ml = clo, mh = chi;
        if (t->descending) {
          ml = g.x0 + g.x1 - std::min(chi, g.x1);
          mh = g.x0 + g.x1 - std::max(clo, g.x0);
        }
        total += sv.count(y, ml, mh);
      }
      // the shared turning point at interior cuts appears in both slabs
      for (size_t i = 1; i + 1 < t->cuts.size(); ++i) {
        if (y != t->cuts[i]) continue;
        SlabGeom g = slab_geom(*t, i - 1);
        Rat xshared = t->descending ? g.x0 : g.x1;
        if (clo <= xshared && xshared <= chi) total -= 1;
      }
      return total;
    }
    case ConstructTree::Kind::Concat: {
      long total = 0;
      for (const TreePtr& p : t->parts) {
        long c = tree_count_in(p, y, clo, chi);
        if (c == kInfCard) return kInfCard;
        total += c;
      }
      for (size_t i = 0; i + 1 < t->parts.size(); ++i) {
        const Rat& joint = t->parts[i]->xb;
        if (clo <= joint && joint <= chi &&
            tree_value_at(t->parts[i], joint) == y)
          --total;
      }
      return total;
    }
    case ConstructTree::Kind::Amend: {
      long total = 0;
      std::vector<std::pair<Rat, Rat>> host_pieces;
      Rat cursor = t->xa;
      for (const TreePtr& p : t->parts) {
        if (cursor < p->xa) host_pieces.emplace_back(cursor, p->xa);
        cursor = p->xb;
      }
      if (cursor < t->xb) host_pieces.emplace_back(cursor, t->xb);
      for (const auto& [a, b] : host_pieces) {
        long c = tree_count_in(t->host, y, std::max(clo, a), std::min(chi, b));
        if (c == kInfCard) return kInfCard;
        total += c;
      }
      for (const TreePtr& p : t->parts) {
        long c = tree_count_in(p, y, clo, chi);
        if (c == kInfCard) return kInfCard;
        total += c;
      }
      std::vector<Rat> joints;
      for (const TreePtr& p : t->parts) {
        if (p->xa > t->xa) joints.push_back(p->xa);
        if (p->xb < t->xb) joints.push_back(p->xb);
      }
      std::sort(joints.begin(), joints.end());
      joints.erase(std::unique(joints.begin(), joints.end()), joints.end());
      for (const Rat& j : joints)
        if (clo <= j && j <= chi && tree_value_at(t, j) == y) --total;
      return total;
    }
    case ConstructTree::Kind::Affine: {
      Rat ys = (y - t->y_off) / t->y_scale;
      Rat u = (clo - t->x_off) / t->x_scale;
      Rat v = (chi - t->x_off) / t->x_scale;
      if (u > v) std::swap(u, v);
      return tree_count_in(t->sub, ys, u, v);
    }
  }
  throw std::logic_error("unknown node");
}

long tree_count_at(const TreePtr& t, const Rat& y) {
  return tree_count_in(t, y, t->xa, t->xb);
}

std::pair<Rat, Rat> tree_range(const TreePtr& t) {
  switch (t->kind) {
    case ConstructTree::Kind::Segment:
      return {std::min(t->ya, t->yb), std::max(t->ya, t->yb)};
    case ConstructTree::Kind::Plateau:
      return {t->ya, t->ya};
    case ConstructTree::Kind::Wave:
      return {t->wave_m, t->wave_M};
    case ConstructTree::Kind::InfStair:
    case ConstructTree::Kind::Stack:
    case ConstructTree::Kind::StrandStair:
      return {t->c, t->d};
    case ConstructTree::Kind::Concat:
    case ConstructTree::Kind::Amend: {
      std::pair<Rat, Rat> r = t->kind == ConstructTree::Kind::Amend
                                  ? tree_range(t->host)
                                  : tree_range(t->parts.front());
      for (const TreePtr& p : t->parts) {
        auto q = tree_range(p);
        r.first = std::min(r.first, q.first);
        r.second = std::max(r.second, q.second);
      }
      return r;
    }
    case ConstructTree::Kind::Affine: {
      auto r = tree_range(t->sub);
      Rat a = r.first * t->y_scale + t->y_off;
      Rat b = r.second * t->y_scale + t->y_off;
      return {std::min(a, b), std::max(a, b)};
    }
  }
  throw std::logic_error("unknown node");
}

bool OmegaSet::contains(long n) const {
  if (finite.count(n)) return true;
  for (const auto& [start, step] : tails)
    if (n >= start && (n - start) % step == 0) return true;
  return false;
}

bool OmegaSet::matches(const CardinalitySpec& s) const {
  if (has_inf != s.includes_infinity) return false;
  long bound = 1, lcm_step = 1;
  for (long v : finite) bound = std::max(bound, v);
  for (long v : s.base) bound = std::max(bound, v);
  for (const auto& [start, step] : tails) {
    bound = std::max(bound, start);
    lcm_step = std::lcm(lcm_step, step);
  }
  if (s.tail) {
    bound = std::max(bound, s.tail->start);
    lcm_step = std::lcm(lcm_step, s.tail->step);
  }
  for (long v = 0; v <= bound + 2 * lcm_step; ++v)
    if (contains(v) != s.contains(v)) return false;
  // eventual behaviour is periodic modulo lcm_step beyond the bound
  long base = bound + 2 * lcm_step + 1;
  for (long r = 0; r < lcm_step; ++r)
    if (contains(base + r) != s.contains(base + r)) return false;
  bool mine_unbounded = !tails.empty();
  if (mine_unbounded != s.tail.has_value()) return false;
  return true;
}

std::string OmegaSet::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (long v : finite) {
    if (!first) os << ",";
    os << v;
    first = false;
  }
  for (const auto& [start, step] : tails) {
    if (!first) os << ",";
    os << start << "+" << step << "...";
    first = false;
  }
  if (has_inf) {
    if (!first) os << ",";
    os << "inf";
  }
  os << "}";
  return os.str();
}

namespace {

// Count contribution classes of one node over an open value interval.
struct IntervalRegime {
  Rat lo, hi;
  bool mixed = false;
  long const_count = 0;  // when !mixed
  std::vector<std::pair<long, Rat>> members;  // (count, representative level)
  std::optional<std::pair<long, long>> tail;  // arithmetic class of counts
  std::vector<std::pair<long, Rat>> tail_reps;  // first tail members
};

struct RegimeBag {
  std::vector<IntervalRegime> intervals;
  std::vector<Rat> points;
};

void collect(const TreePtr& t, RegimeBag& bag) {
  switch (t->kind) {
    case ConstructTree::Kind::Segment: {
      if (t->ya == t->yb) {
        bag.points.push_back(t->ya);
        return;
      }
      Rat lo = std::min(t->ya, t->yb), hi = std::max(t->ya, t->yb);
      bag.intervals.push_back({lo, hi, false, 1, {}, std::nullopt, {}});
      bag.points.push_back(lo);
      bag.points.push_back(hi);
      return;
    }
    case ConstructTree::Kind::Plateau:
      bag.points.push_back(t->ya);
      return;
    case ConstructTree::Kind::Wave:
      bag.intervals.push_back(
          {t->wave_m, t->wave_M, false, t->wave_n, {}, std::nullopt, {}});
      bag.points.push_back(t->wave_m);
      bag.points.push_back(t->wave_M);
      return;
    case ConstructTree::Kind::InfStair: {
      bag.points.push_back(t->c);
      bag.points.push_back(t->d);
      switch (t->sig.kind) {
        case SignatureDescr::Kind::Constant:
          bag.intervals.push_back(
              {t->c, t->d, false, t->sig.k, {}, std::nullopt, {}});
          return;
        case SignatureDescr::Kind::Pair:
          bag.points.push_back(t->pivot);
          bag.intervals.push_back(
              {t->c, t->pivot, false, t->sig.p, {}, std::nullopt, {}});
          bag.intervals.push_back(
              {t->pivot, t->d, false, t->sig.q, {}, std::nullopt, {}});
          return;
        case SignatureDescr::Kind::Periodic: {
          IntervalRegime r{t->c, t->d, true, 0, {}, std::nullopt, {}};
          long n = static_cast<long>(t->sig.word.size());
          for (long j = 0; j < n; ++j) {
            Rat mid = lerp(t->c, t->d, (sigmoid(j) + sigmoid(j + 1)) / 2);
            r.members.emplace_back(t->sig.word[j], mid);
            long prev = signature_order_at(t->sig, j - 1);
            long cur = t->sig.word[j];
            r.members.emplace_back((prev + cur) / 2,
                                   lerp(t->c, t->d, sigmoid(j)));
          }
          bag.intervals.push_back(std::move(r));
          return;
        }
      }
      return;
    }
    case ConstructTree::Kind::Stack: {
      bag.points.push_back(t->c);
      bag.points.push_back(t->d);
      IntervalRegime r{t->c, t->d, true, 0, {}, std::nullopt, {}};
      long probe = static_cast<long>(t->stack_head.size());
      if (!t->stack_tail && probe == 0)
        throw std::logic_error("empty stack orders");
      if (!t->stack_tail) probe = std::max<long>(probe, 1);
      for (long j = 0; j < probe; ++j) {
        Rat mid = lerp(t->c, t->d, (upper_bnd(j) + upper_bnd(j + 1)) / 2);
        r.members.emplace_back(stack_order(*t, j), mid);
      }
      // one join representative is enough: every join contributes 1
      r.members.emplace_back(1, lerp(t->c, t->d, upper_bnd(std::max<long>(probe, 1))));
      if (t->stack_tail) {
        long h = static_cast<long>(t->stack_head.size());
        r.tail = *t->stack_tail;
        for (long j = h; j < h + 3; ++j)
          r.tail_reps.emplace_back(
              stack_order(*t, j),
              lerp(t->c, t->d, (upper_bnd(j) + upper_bnd(j + 1)) / 2));
      }
      bag.intervals.push_back(std::move(r));
      return;
    }
    case ConstructTree::Kind::StrandStair: {
      for (const Rat& cut : t->cuts) bag.points.push_back(cut);
      for (size_t i = 0; i < t->sigmas.size(); ++i)
        bag.intervals.push_back({t->cuts[i], t->cuts[i + 1], false,
                                 t->sigmas[i], {}, std::nullopt, {}});
      return;
    }
    case ConstructTree::Kind::Concat:
      for (const TreePtr& p : t->parts) collect(p, bag);
      return;
    case ConstructTree::Kind::Amend:
      collect(t->host, bag);
      for (const TreePtr& p : t->parts) collect(p, bag);
      return;
    case ConstructTree::Kind::Affine: {
      RegimeBag sub;
      collect(t->sub, sub);
      for (Rat& v : sub.points)
        bag.points.push_back(v * t->y_scale + t->y_off);
      for (IntervalRegime& r : sub.intervals) {
        Rat lo = r.lo * t->y_scale + t->y_off;
        Rat hi = r.hi * t->y_scale + t->y_off;
        if (lo > hi) std::swap(lo, hi);
        IntervalRegime out = r;
        out.lo = lo;
        out.hi = hi;
        for (auto& m : out.members) m.second = m.second * t->y_scale + t->y_off;
        for (auto& m : out.tail_reps)
          m.second = m.second * t->y_scale + t->y_off;
        bag.intervals.push_back(std::move(out));
      }
      return;
    }
  }
}

}  // namespace

OmegaSet omega_sym(const TreePtr& t) {
  RegimeBag bag;
  collect(t, bag);

  std::vector<Rat> cuts = bag.points;
  for (const auto& r : bag.intervals) {
    cuts.push_back(r.lo);
    cuts.push_back(r.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.empty()) throw std::logic_error("regime enumeration incomplete");

  OmegaSet out;
  out.finite.insert(0);

  if (tree_count_at(t, cuts.front() - 1) != 0 ||
      tree_count_at(t, cuts.back() + 1) != 0)
    throw std::logic_error("regime enumeration incomplete");

  auto note_count = [&](long c) {
    if (c == kInfCard)
      out.has_inf = true;
    else
      out.finite.insert(c);
  };

  for (const Rat& v : cuts) note_count(tree_count_at(t, v));

  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rat &lo = cuts[i], &hi = cuts[i + 1];
    const IntervalRegime* mixed = nullptr;
    for (const auto& r : bag.intervals) {
      if (!(r.lo < hi && lo < r.hi)) continue;
      if (!r.mixed) continue;
      if (mixed) throw std::logic_error("regime enumeration incomplete");
      if (!(r.lo == lo && r.hi == hi))
        throw std::logic_error("regime enumeration incomplete");
      mixed = &r;
    }
    if (!mixed) {
      note_count(tree_count_at(t, (lo + hi) / 2));
      continue;
    }
    long base = -1;
    for (const auto& [cls, rep] : mixed->members) {
      long got = tree_count_at(t, rep);
      if (got == kInfCard)
        throw std::logic_error("regime enumeration incomplete");
      long others = got - cls;
      if (others < 0) throw std::logic_error("regime enumeration incomplete");
      if (base < 0) base = others;
      if (others != base)
        throw std::logic_error("regime enumeration incomplete");
      note_count(got);
    }
    if (mixed->tail) {
      for (const auto& [cls, rep] : mixed->tail_reps) {
        long got = tree_count_at(t, rep);
        if (got != cls + base)
          throw std::logic_error("regime enumeration incomplete");
        note_count(got);
      }
      out.tails.emplace_back(mixed->tail->first + base, mixed->tail->second);
    }
  }
  // drop finite members already covered by a tail
  for (auto it = out.finite.begin(); it != out.finite.end();) {
    bool in_tail = false;
    for (const auto& [start, step] : out.tails)
      if (*it >= start && (*it - start) % step == 0) in_tail = true;
    if (in_tail)
      it = out.finite.erase(it);
    else
      ++it;
  }
  return out;
}

namespace {

void materialize_into(const TreePtr& t, long depth,
                      std::vector<std::pair<Rat, Rat>>& pts);

void emit_wave_pts(long n, const Rat& x0, const Rat& x1, const Rat& v0,
                   const Rat& v1, std::vector<std::pair<Rat, Rat>>& pts) {
  Rat w = (x1 - x0) / Rat(n);
  for (long i = 0; i <= n; ++i) {
    Rat x = x0 + w * Rat(i);
    Rat y = i % 2 == 0 ? v0 : v1;
    if (!pts.empty() && pts.back().first == x) continue;
    pts.emplace_back(x, y);
  }
}

void materialize_into(const TreePtr& t, long depth,
                      std::vector<std::pair<Rat, Rat>>& pts) {
  auto push = [&pts](const Rat& x, const Rat& y) {
    if (!pts.empty() && pts.back().first == x) return;
    pts.emplace_back(x, y);
  };
  switch (t->kind) {
    case ConstructTree::Kind::Segment:
      push(t->xa, t->ya);
      push(t->xb, t->yb);
      return;
    case ConstructTree::Kind::Plateau:
      push(t->xa, t->ya);
      push(t->xb, t->ya);
      return;
    case ConstructTree::Kind::Wave: {
      emit_wave_pts(t->wave_n, t->xa, t->xb, t->wave_m, t->wave_M, pts);
      return;
    }
    case ConstructTree::Kind::InfStair: {
      push(t->xa, t->c);
      if (t->sig.kind != SignatureDescr::Kind::Pair) {
        for (long b = -depth; b < depth; ++b) {
          Rat x0 = lerp(t->xa, t->xb, sigmoid(b));
          Rat x1 = lerp(t->xa, t->xb, sigmoid(b + 1));
          Rat v0 = lerp(t->c, t->d, sigmoid(b));
          Rat v1 = lerp(t->c, t->d, sigmoid(b + 1));
          emit_wave_pts(signature_order_at(t->sig, b), x0, x1, v0, v1, pts);
        }
      } else {
        PairView pv = pair_view(*t);
        for (long b = -depth; b <= -1; ++b) {
          emit_wave_pts(t->sig.p, pv.lo_xbnd(b), pv.lo_xbnd(b + 1),
                        pv.lo_vbnd(b), pv.lo_vbnd(b + 1), pts);
        }
        for (long b = 0; b < depth; ++b) {
          emit_wave_pts(t->sig.q, pv.up_xbnd(b), pv.up_xbnd(b + 1),
                        pv.up_vbnd(b), pv.up_vbnd(b + 1), pts);
        }
      }
      push(t->xb, t->d);
      return;
    }
    case ConstructTree::Kind::Stack: {
      push(t->xa, t->c);
      for (long j = 0; j < depth; ++j) {
        SignatureDescr sig;
        sig.kind = SignatureDescr::Kind::Constant;
        sig.k = stack_order(*t, j);
        TreePtr inner = mk_infstair(sig, lerp(t->xa, t->xb, upper_bnd(j)),
                                    lerp(t->xa, t->xb, upper_bnd(j + 1)),
                                    lerp(t->c, t->d, upper_bnd(j)),
                                    lerp(t->c, t->d, upper_bnd(j + 1)));
        materialize_into(inner, std::max<long>(1, depth / 2), pts);
      }
      push(t->xb, t->d);
      return;
    }
    case ConstructTree::Kind::StrandStair: {
      std::vector<std::pair<Rat, Rat>> local;
      for (size_t i = 0; i < t->sigmas.size(); ++i) {
        SlabGeom g = slab_geom(*t, i);
        SignatureDescr sig;
        sig.kind = SignatureDescr::Kind::Constant;
        sig.k = t->sigmas[i];
        TreePtr inner = mk_infstair(sig, g.x0, g.x1, g.v0, g.v1);
        std::vector<std::pair<Rat, Rat>> piece;
        materialize_into(inner, depth, piece);
        if (t->descending)
          for (auto& pr : piece) pr.first = g.x0 + g.x1 - pr.first;
        local.insert(local.end(), piece.begin(), piece.end());
      }
      std::sort(local.begin(), local.end());
      for (auto& pr : local)
        if (pts.empty() || pts.back().first != pr.first) pts.push_back(pr);
      return;
    }
    case ConstructTree::Kind::Concat:
      for (const TreePtr& p : t->parts) materialize_into(p, depth, pts);
      return;
    case ConstructTree::Kind::Amend: {
      std::vector<std::pair<Rat, Rat>> host_pts;
      materialize_into(t->host, depth, host_pts);
      std::vector<std::pair<Rat, Rat>> merged;
      for (const TreePtr& p : t->parts) materialize_into(p, depth, merged);
      for (const auto& hp : host_pts) {
        bool inside = false;
        for (const TreePtr& p : t->parts)
          if (p->xa <= hp.first && hp.first <= p->xb) inside = true;
        if (!inside) merged.push_back(hp);
      }
      std::sort(merged.begin(), merged.end());
      for (auto& pr : merged)
        if (pts.empty() || pts.back().first != pr.first) pts.push_back(pr);
      return;
    }
    case ConstructTree::Kind::Affine: {
      std::vector<std::pair<Rat, Rat>> sub;
      materialize_into(t->sub, depth, sub);
      for (auto& pr : sub) {
        pr.first = pr.first * t->x_scale + t->x_off;
        pr.second = pr.second * t->y_scale + t->y_off;
      }
      std::sort(sub.begin(), sub.end());
      for (auto& pr : sub)
        if (pts.empty() || pts.back().first != pr.first) pts.push_back(pr);
      return;
    }
  }
}

}  // namespace

PLFunction materialize(const TreePtr& t, long depth, long samples_per_leaf) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  std::vector<std::pair<Rat, Rat>> pts;
  materialize_into(t, depth, pts);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) {
                          return a.first == b.first;
                        }),
            pts.end());
  if (samples_per_leaf > 1) {
    std::vector<std::pair<Rat, Rat>> dense;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      dense.push_back(pts[i]);
      for (long s = 1; s < samples_per_leaf; ++s) {
        Rat f = make_rat(s, samples_per_leaf);
        dense.emplace_back(pts[i].first + (pts[i + 1].first - pts[i].first) * f,
                           pts[i].second + (pts[i + 1].second - pts[i].second) * f);
      }
    }
    dense.push_back(pts.back());
    pts = std::move(dense);
  }
  return make_pl(std::move(pts));
}

}  // namespace omegaforge
