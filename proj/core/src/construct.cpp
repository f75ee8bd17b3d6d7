#include "omegaforge/construct.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace omegaforge {

const char* recipe_name(RecipeCase c) {
  switch (c) {
    case RecipeCase::Identity: return "identity";
    case RecipeCase::Prop1Case1: return "prop1-case1";
    case RecipeCase::Prop1Case2: return "prop1-case2";
    case RecipeCase::Prop1Case3: return "prop1-case3";
    case RecipeCase::Prop1Case4: return "prop1-case4";
    case RecipeCase::Prop1Case5: return "prop1-case5";
    case RecipeCase::Thm1Case1: return "thm1-case1";
    case RecipeCase::Thm1Case2: return "thm1-case2";
    case RecipeCase::WithInfinity: return "with-infinity";
  }
  return "?";
}

namespace {

// An arithmetic progression of counts, step even so all members share parity.
struct Progression {
  long start;
  long step;
};

// Parity-split view of the target set: finite members, plus progressions.
struct Targets {
  std::vector<long> finite;          // nonzero finite members, ascending
  std::vector<Progression> tails;    // even-step progressions
  long cap = 1;                      // largest useful strand order bound

  bool contains(long v) const {
    if (v == 0) return true;
    if (std::binary_search(finite.begin(), finite.end(), v)) return true;
    for (const auto& t : tails)
      if (v >= t.start && (v - t.start) % t.step == 0) return true;
    return false;
  }
};

Targets split_targets(const CardinalitySpec& s) {
  Targets t;
  for (long b : s.base)
    if (b > 0) t.finite.push_back(b);
  if (s.tail) {
    long st = s.tail->start, d = s.tail->step;
    if (d % 2 == 0) {
      t.tails.push_back({st, d});
    } else {
      // mixed parities: split into two even-step progressions
      t.tails.push_back({st, 2 * d});
      t.tails.push_back({st + d, 2 * d});
    }
  }
  // drop finite members that a progression already covers
  std::vector<long> keep;
  for (long v : t.finite) {
    bool covered = false;
    for (const auto& tl : t.tails)
      if (v >= tl.start && (v - tl.start) % tl.step == 0) covered = true;
    if (!covered) keep.push_back(v);
  }
  t.finite = std::move(keep);
  std::sort(t.finite.begin(), t.finite.end());
  t.cap = 1;
  for (long v : t.finite) t.cap = std::max(t.cap, v);
  for (const auto& tl : t.tails) t.cap = std::max(t.cap, tl.start);
  return t;
}

// ---------------------------------------------------------------------------
// Profile search: a breadth-first sweep over ordered strand states. Strands
// carry odd stair orders; one level applies joins, pivots, pair turning
// events, endpoint events and births, and an arithmetic tail is consumed by
// a dedicated ladder move whose rungs realize the whole progression.
// ---------------------------------------------------------------------------

struct SState {
  std::vector<long> sig;
  bool lp = true, rp = true;
  uint32_t covered = 0;
  uint32_t tails_used = 0;

  bool operator<(const SState& o) const {
    return std::tie(sig, lp, rp, covered, tails_used) <
           std::tie(o.sig, o.lp, o.rp, o.covered, o.tails_used);
  }
};

enum OpKind : long { kPass = 0, kJoin = 1, kPivot = 2, kDieA = 3, kDieB = 4,
                     kEndDie = 5 };

struct SPlan {
  std::vector<std::pair<long, long>> ops;   // (kind, new sigma)
  bool eb_left = false, eb_right = false;
  std::vector<std::array<long, 3>> births;  // (gap, sigma left, sigma right)
  bool ladder = false;
  long ladder_strand = -1;
  long ladder_tail = -1;
  long ladder_sig0 = 0;

  std::vector<long> encode() const {
    std::vector<long> e;
    e.push_back(ladder ? 1 : 0);
    e.push_back(ladder_strand);
    e.push_back(ladder_tail);
    for (const auto& [k, s] : ops) {
      e.push_back(k);
      e.push_back(s);
    }
    e.push_back(-1);
    e.push_back(eb_left ? 1 : 0);
    e.push_back(eb_right ? 1 : 0);
    for (const auto& b : births) {
      e.push_back(b[0]);
      e.push_back(b[1]);
      e.push_back(b[2]);
    }
    return e;
  }
};

using SPath = std::vector<SPlan>;

std::vector<long> encode_path(const SPath& p) {
  std::vector<long> e;
  for (const auto& pl : p) {
    auto x = pl.encode();
    e.push_back(static_cast<long>(x.size()));
    e.insert(e.end(), x.begin(), x.end());
  }
  return e;
}

struct SearchCtx {
  Targets tg;
  const CardinalitySpec* spec;
  std::vector<long> alphabet;  // odd orders
  long cap = 1;
  long budget = 3;

  int dir(const SState& st, size_t i) const {
    bool first_left = st.lp;  // leftmost strand moves left while pending
    bool even = i % 2 == 0;
    return (even == first_left) ? -1 : +1;
  }

  uint32_t full_mask() const {
    return (1u << (tg.finite.size())) - 1;
  }
  uint32_t full_tails() const {
    return (1u << (tg.tails.size())) - 1;
  }

  void mark_value(uint32_t& covered, long v) const {
    for (size_t i = 0; i < tg.finite.size(); ++i)
      if (tg.finite[i] == v) covered |= 1u << i;
  }
  void mark_progression(uint32_t& covered, const Progression& pr) const {
    for (size_t i = 0; i < tg.finite.size(); ++i) {
      long v = tg.finite[i];
      if (v >= pr.start && (v - pr.start) % pr.step == 0) covered |= 1u << i;
    }
  }
};

// Applies a plan; returns false when illegal. pts gets the level count.
bool apply_plan(const SearchCtx& ctx, const SState& st, const SPlan& pl,
                SState& out, long& pts) {
  const auto& sig = st.sig;
  size_t c = sig.size();
  if (pl.ops.size() != c) return false;
  pts = 0;
  long R = 0;  // sum of sigmas of non-ladder strands
  if (pl.ladder) {
    if (pl.ladder_strand < 0 || pl.ladder_strand >= static_cast<long>(c))
      return false;
    if (st.tails_used & (1u << pl.ladder_tail)) return false;
    for (size_t i = 0; i < c; ++i)
      if (static_cast<long>(i) != pl.ladder_strand) R += sig[i];
    const Progression& pr = ctx.tg.tails[pl.ladder_tail];
    long sig0 = pr.start - R;
    if (sig0 < 1 || sig0 % 2 == 0) return false;
    if (sig0 != pl.ladder_sig0) return false;
    // rung count: the joining point plus every other strand's crossings
    if (!ctx.spec->contains(R + 1)) return false;
    // other strands must simply pass through the ladder range
  }

  out = st;
  out.sig.clear();
  bool lp = st.lp, rp = st.rp;
  std::vector<long> survivors;
  for (size_t i = 0; i < c; ++i) {
    auto [kind, ns] = pl.ops[i];
    bool is_ladder = pl.ladder && static_cast<long>(i) == pl.ladder_strand;
    switch (kind) {
      case kPass:
        if (is_ladder) return false;  // the accumulated strand cannot pass
        pts += sig[i];
        survivors.push_back(sig[i]);
        break;
      case kJoin:
        if (ns < 1 || ns % 2 == 0) return false;
        pts += 1;
        survivors.push_back(ns);
        break;
      case kPivot: {
        if (is_ladder) return false;
        if (ns < 1 || ns % 2 == 0 || ns == sig[i]) return false;
        pts += (sig[i] + ns) / 2;
        survivors.push_back(ns);
        break;
      }
      case kDieA: {
        if (i + 1 >= c || pl.ops[i + 1].first != kDieB) return false;
        if (ctx.dir(st, i) != +1 || ctx.dir(st, i + 1) != -1) return false;
        pts += 1;
        ++i;  // consume the partner
        break;
      }
      case kDieB:
        return false;  // must be consumed by kDieA
      case kEndDie: {
        if (i == 0 && lp && ctx.dir(st, 0) == -1 && !(pl.ladder && pl.ladder_strand == 0)) {
          lp = false;
          pts += 1;
        } else if (i + 1 == c && rp && ctx.dir(st, i) == +1 &&
                   !(pl.ladder && pl.ladder_strand == static_cast<long>(i))) {
          rp = false;
          pts += 1;
        } else {
          return false;
        }
        break;
      }
      default:
        return false;
    }
  }
  // endpoint births
  std::vector<long> order = survivors;
  bool lp2 = lp, rp2 = rp;
  if (pl.eb_left) {
    if (!lp2) return false;
    order.insert(order.begin(), 0);  // marker replaced below
    lp2 = false;
    pts += 1;
  }
  if (pl.eb_right) {
    if (!rp2) return false;
    order.push_back(0);
    rp2 = false;
    pts += 1;
  }
  // endpoint-born strands are monotone pieces, order 1
  for (auto& v : order)
    if (v == 0) v = 1;
  // births: gap above iff gap 0 with lp2 pending, else after a right-mover
  for (const auto& b : pl.births) {
    long gap = b[0];
    if (gap < 0 || gap > static_cast<long>(order.size())) return false;
    // direction of strand i in the current post-event order
    auto dir_at = [&](long i) {
      bool even = i % 2 == 0;
      return (even == lp2) ? -1 : +1;
    };
    bool above = gap == 0 ? lp2 : dir_at(gap - 1) == +1;
    if (!above) return false;
    if (b[1] < 1 || b[1] % 2 == 0 || b[2] < 1 || b[2] % 2 == 0) return false;
    order.insert(order.begin() + gap, {b[1], b[2]});
    pts += 1;
  }
  out.sig = std::move(order);
  out.lp = lp2;
  out.rp = rp2;
  if (pl.ladder) {
    out.tails_used |= 1u << pl.ladder_tail;
    ctx.mark_progression(out.covered, ctx.tg.tails[pl.ladder_tail]);
    ctx.mark_value(out.covered, R + 1);
  }
  if (!ctx.spec->contains(pts)) return false;
  ctx.mark_value(out.covered, pts);
  long band = 0;
  for (long v : out.sig) band += v;
  if (band > 0) {
    if (!ctx.spec->contains(band)) return false;
    ctx.mark_value(out.covered, band);
  }
  return true;
}

// Deterministic enumeration of candidate plans from a state.
void enumerate_plans(const SearchCtx& ctx, const SState& st, long budget,
                     std::vector<SPlan>& out) {
  size_t c = st.sig.size();
  long cap = ctx.cap;

  SPlan base;
  base.ops.assign(c, {kPass, 0});

  struct Item {
    SPlan plan;
    long used;
    long pts;   // committed point count
    long band;  // committed surviving order sum
  };
  std::vector<Item> cur{{base, 0, 0, 0}};
  for (size_t i = 0; i < c; ++i) {
    std::vector<Item> next;
    for (const Item& it : cur) {
      if (it.plan.ops[i].first != kPass) {
        next.push_back(it);  // kDieB partner already assigned
        continue;
      }
      long remaining = static_cast<long>(c - i) - 1;
      long lb = (remaining + 1) / 2;  // every strand still costs >= 1/2 point
      // pass
      if (it.pts + st.sig[i] + lb <= cap + 1) {
        Item p = it;
        p.pts += st.sig[i];
        p.band += st.sig[i];
        next.push_back(p);
      }
      if (it.used < budget) {
        for (long ns : ctx.alphabet) {
          if (it.band + ns > cap) continue;
          if (it.pts + 1 + lb <= cap + 1) {
            Item j = it;
            j.plan.ops[i] = {kJoin, ns};
            j.used += 1;
            j.pts += 1;
            j.band += ns;
            next.push_back(j);
          }
          if (ns != st.sig[i] && it.pts + (st.sig[i] + ns) / 2 + lb <= cap + 1) {
            Item p = it;
            p.plan.ops[i] = {kPivot, ns};
            p.used += 1;
            p.pts += (st.sig[i] + ns) / 2;
            p.band += ns;
            next.push_back(p);
          }
        }
        if (i + 1 < c && ctx.dir(st, i) == +1 && ctx.dir(st, i + 1) == -1 &&
            it.pts + 1 <= cap + 1) {
          Item d = it;
          d.plan.ops[i] = {kDieA, 0};
          d.plan.ops[i + 1] = {kDieB, 0};
          d.used += 1;
          d.pts += 1;
          next.push_back(d);
        }
        if (((i == 0 && st.lp && ctx.dir(st, 0) == -1) ||
             (i + 1 == c && st.rp && ctx.dir(st, i) == +1)) &&
            it.pts + 1 <= cap + 1) {
          Item e = it;
          e.plan.ops[i] = {kEndDie, 0};
          e.used += 1;
          e.pts += 1;
          next.push_back(e);
        }
      }
    }
    cur = std::move(next);
    if (cur.size() > 500000) {
      cur.clear();
      return;
    }
  }

  for (Item& it : cur) {
    if (it.pts > cap) continue;
    for (int eb = 0; eb < 4; ++eb) {
      bool ebl = eb & 1, ebr = eb & 2;
      long used = it.used + (ebl ? 1 : 0) + (ebr ? 1 : 0);
      if (used > budget) continue;
      if (ebl && !st.lp) continue;
      if (ebr && !st.rp) continue;
      bool edl = false, edr = false;
      for (size_t i = 0; i < c; ++i)
        if (it.plan.ops[i].first == kEndDie) {
          if (i == 0 && ctx.dir(st, 0) == -1)
            edl = true;
          else
            edr = true;
        }
      if ((ebl && edl) || (ebr && edr)) continue;
      long pts0 = it.pts + (ebl ? 1 : 0) + (ebr ? 1 : 0);
      long band0 = it.band + (ebl ? 1 : 0) + (ebr ? 1 : 0);
      if (pts0 > cap) continue;
      SPlan p = it.plan;
      p.eb_left = ebl;
      p.eb_right = ebr;
      out.push_back(p);
      if (used >= budget) continue;
      long surv = 0;
      for (size_t i = 0; i < c; ++i) {
        long k = p.ops[i].first;
        if (k == kPass || k == kJoin || k == kPivot) ++surv;
      }
      surv += (ebl ? 1 : 0) + (ebr ? 1 : 0);
      for (long g1 = 0; g1 <= surv; ++g1)
        for (long sl : ctx.alphabet)
          for (long sr : ctx.alphabet) {
            if (band0 + sl + sr > cap || pts0 + 1 > cap) continue;
            SPlan p1 = p;
            p1.births.push_back({g1, sl, sr});
            out.push_back(p1);
            if (used + 2 <= budget) {
              for (long g2 = g1; g2 <= surv + 2; ++g2)
                for (long sl2 : ctx.alphabet)
                  for (long sr2 : ctx.alphabet) {
                    if (band0 + sl + sr + sl2 + sr2 > cap ||
                        pts0 + 2 > cap)
                      continue;
                    SPlan p2 = p1;
                    p2.births.push_back({g2, sl2, sr2});
                    out.push_back(p2);
                  }
            }
          }
    }
  }

  // Bulk plans: whole-level turning schedules in the style of the piecewise
  // linear sweep; they realize levels whose event count exceeds the action
  // budget (k births at the rightmost gap, k rightmost pair deaths), with
  // endpoint events and optionally one extra join or pivot.
  {
    auto dir_of = [&](size_t i) { return ctx.dir(st, i); };
    // death base: rightmost disjoint (R, L) pairs
    std::vector<size_t> pair_starts;
    {
      std::vector<char> used(c, 0);
      size_t i = c;
      while (i >= 2) {
        --i;
        if (!used[i - 1] && !used[i] && dir_of(i - 1) == +1 && dir_of(i) == -1) {
          used[i - 1] = used[i] = 1;
          pair_starts.push_back(i - 1);
          if (i >= 1) --i;
        }
      }
    }
    for (size_t take = 1; take <= pair_starts.size(); ++take) {
      for (int ed = 0; ed < 4; ++ed) {
        bool edl = ed & 1, edr = ed & 2;
        SPlan p;
        p.ops.assign(c, {kPass, 0});
        bool valid = true;
        std::vector<char> claimed(c, 0);
        for (size_t k2 = 0; k2 < take; ++k2) {
          size_t a = pair_starts[k2];
          p.ops[a] = {kDieA, 0};
          p.ops[a + 1] = {kDieB, 0};
          claimed[a] = claimed[a + 1] = 1;
        }
        if (edl) {
          if (!st.lp || c == 0 || dir_of(0) != -1 || claimed[0]) valid = false;
          else {
            p.ops[0] = {kEndDie, 0};
            claimed[0] = 1;
          }
        }
        if (edr) {
          if (!st.rp || c == 0 || dir_of(c - 1) != +1 || claimed[c - 1])
            valid = false;
          else {
            p.ops[c - 1] = {kEndDie, 0};
            claimed[c - 1] = 1;
          }
        }
        if (!valid) continue;
        out.push_back(p);
        // one extra action on a survivor
        for (size_t s2 = 0; s2 < c; ++s2) {
          if (claimed[s2]) continue;
          for (long ns : ctx.alphabet) {
            SPlan pj = p;
            pj.ops[s2] = {kJoin, ns};
            out.push_back(pj);
            if (ns != st.sig[s2]) {
              SPlan pp = p;
              pp.ops[s2] = {kPivot, ns};
              out.push_back(pp);
            }
          }
        }
      }
    }
    // birth base: k pairs stacked at the rightmost above gap
    long band0 = 0;
    for (long v : st.sig) band0 += v;
    long rightmost_gap = -1;
    for (long g = static_cast<long>(c); g >= 0; --g) {
      bool above = g == 0 ? st.lp : dir_of(g - 1) == +1;
      if (above) {
        rightmost_gap = g;
        break;
      }
    }
    if (rightmost_gap >= 0) {
      for (int eb = 0; eb < 4; ++eb) {
        bool ebl = eb & 1, ebr = eb & 2;
        if (ebl && !st.lp) continue;
        if (ebr && !st.rp) continue;
        for (long sl : ctx.alphabet)
          for (long sr : ctx.alphabet) {
            for (long beta = 1;; ++beta) {
              long pts = band0 + beta + (ebl ? 1 : 0) + (ebr ? 1 : 0);
              long band = band0 + beta * (sl + sr) + (ebl ? 1 : 0) + (ebr ? 1 : 0);
              if (pts > cap || band > cap) break;
              SPlan p;
              p.ops.assign(c, {kPass, 0});
              p.eb_left = ebl;
              p.eb_right = ebr;
              long g = rightmost_gap + (ebl ? 1 : 0);
              for (long k2 = 0; k2 < beta; ++k2)
                p.births.push_back({g, sl, sr});
              out.push_back(p);
            }
          }
      }
    }
  }

  // ladder moves: consume one unused progression on one strand
  for (size_t ti = 0; ti < ctx.tg.tails.size(); ++ti) {
    if (st.tails_used & (1u << ti)) continue;
    const Progression& pr = ctx.tg.tails[ti];
    for (size_t j = 0; j < c; ++j) {
      long R = 0;
      for (size_t i = 0; i < c; ++i)
        if (i != j) R += st.sig[i];
      long sig0 = pr.start - R;
      if (sig0 < 1 || sig0 % 2 == 0) continue;
      if (!ctx.spec->contains(R + 1)) continue;
      // after the ladder the strand joins to a fresh order or dies with a
      // neighbour; enumerate small L*-plans
      for (long ns : ctx.alphabet) {
        SPlan p;
        p.ops.assign(c, {kPass, 0});
        p.ops[j] = {kJoin, ns};
        p.ladder = true;
        p.ladder_strand = static_cast<long>(j);
        p.ladder_tail = static_cast<long>(ti);
        p.ladder_sig0 = sig0;
        out.push_back(p);
        // plus one extra action: a pair death elsewhere or endpoint events
        for (size_t i2 = 0; i2 + 1 < c; ++i2) {
          if (i2 == j || i2 + 1 == j) continue;
          if (ctx.dir(st, i2) != +1 || ctx.dir(st, i2 + 1) != -1) continue;
          SPlan p2 = p;
          p2.ops[i2] = {kDieA, 0};
          p2.ops[i2 + 1] = {kDieB, 0};
          out.push_back(p2);
        }
      }
      // ladder strand dies with a neighbour at the accumulation level
      for (int side = 0; side < 2; ++side) {
        long a = side == 0 ? static_cast<long>(j) - 1 : static_cast<long>(j);
        long b = a + 1;
        if (a < 0 || b >= static_cast<long>(c)) continue;
        if (ctx.dir(st, a) != +1 || ctx.dir(st, b) != -1) continue;
        SPlan p;
        p.ops.assign(c, {kPass, 0});
        p.ops[a] = {kDieA, 0};
        p.ops[b] = {kDieB, 0};
        p.ladder = true;
        p.ladder_strand = static_cast<long>(j);
        p.ladder_tail = static_cast<long>(ti);
        p.ladder_sig0 = sig0;
        out.push_back(p);
        // optionally also end deaths for the remaining strands
        for (size_t i2 = 0; i2 < c; ++i2) {
          if (static_cast<long>(i2) == a || static_cast<long>(i2) == b) continue;
          if ((i2 == 0 && st.lp && ctx.dir(st, 0) == -1) ||
              (i2 + 1 == c && st.rp && ctx.dir(st, i2) == +1)) {
            SPlan p2 = p;
            p2.ops[i2] = {kEndDie, 0};
            out.push_back(p2);
          }
        }
      }
    }
  }
}

std::optional<SPath> profile_search(const SearchCtx& ctx) {
  const size_t max_levels =
      2 * (ctx.tg.finite.size() + ctx.tg.tails.size()) + 8;
  SState init;
  ctx.mark_value(init.covered, 0);

  std::map<SState, SPath> frontier;
  frontier[init] = {};

  for (size_t depth = 0; depth < max_levels; ++depth) {
    // accepting?
    const SPath* best = nullptr;
    std::vector<long> best_enc;
    for (const auto& [st, path] : frontier) {
      if (!st.sig.empty() || st.lp || st.rp) continue;
      if (st.covered != ctx.full_mask()) continue;
      if (st.tails_used != ctx.full_tails()) continue;
      if (path.empty()) continue;
      auto enc = encode_path(path);
      if (!best || enc < best_enc) {
        best = &path;
        best_enc = enc;
      }
    }
    if (best) return *best;

    std::map<SState, SPath> next;
    for (const auto& [st, path] : frontier) {
      if (st.sig.empty() && !path.empty()) continue;  // interior zero band
      std::vector<SPlan> plans;
      enumerate_plans(ctx, st, ctx.budget, plans);
      for (const SPlan& pl : plans) {
        SState ns;
        long pts = 0;
        if (!apply_plan(ctx, st, pl, ns, pts)) continue;
        SPath np = path;
        np.push_back(pl);
        auto it = next.find(ns);
        if (it == next.end() || encode_path(np) < encode_path(it->second))
          next[ns] = std::move(np);
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  // final acceptance check after the last expansion
  for (const auto& [st, path] : frontier) {
    if (!st.sig.empty() || st.lp || st.rp) continue;
    if (st.covered != ctx.full_mask()) continue;
    if (st.tails_used != ctx.full_tails()) continue;
    if (!path.empty()) return path;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Emission: replay the plan path, build strand histories, walk the resulting
// path graph and emit one tree piece per monotone run.
// ---------------------------------------------------------------------------

struct EmEvent {
  enum Kind { Valley, Peak, EndLeft, EndRight } kind;
  Rat level;
  std::vector<long> strands;  // 1 or 2 ids, left to right
};

struct EmBand {
  Rat lo, hi;
  long sigma = 1;
  bool join_below = false;  // hard join at lo (stacked stairs)
  bool ladder = false;      // stack with an arithmetic order tail
  long ladder_sig0 = 0, ladder_step = 0;
};

struct EmStrand {
  long birth_event = -1, death_event = -1;
  Rat birth_level, death_level;
  std::vector<EmBand> bands;
  long cur_sigma = 1;
  bool pending_join = false;
  Rat last_event_level;
};

struct Emulation {
  std::vector<EmEvent> events;
  std::vector<EmStrand> strands;
  std::vector<long> order;  // live strand ids, left to right
};

void em_close_band(Emulation& em, long sid, const Rat& up_to) {
  EmStrand& s = em.strands[sid];
  if (s.last_event_level < up_to) {
    EmBand b;
    b.lo = s.last_event_level;
    b.hi = up_to;
    b.sigma = s.cur_sigma;
    b.join_below = s.pending_join;
    s.bands.push_back(b);
    s.last_event_level = up_to;
    s.pending_join = false;
  }
}

// Replays the accepted path assigning integer level values; a ladder plan
// consumes two level slots (the entry join and the accumulation level).
Emulation replay(const SearchCtx& ctx, const SPath& path) {
  Emulation em;
  bool lp = true, rp = true;
  long next_level = 1;
  for (size_t depth = 0; depth < path.size(); ++depth) {
    const SPlan& pl = path[depth];

    if (pl.ladder) {
      Rat entry(next_level++);
      Rat lstar(next_level);  // consumed by the ops below
      long sid = em.order[pl.ladder_strand];
      em_close_band(em, sid, entry);
      EmStrand& s = em.strands[sid];
      EmBand b;
      b.lo = entry;
      b.hi = lstar;
      b.join_below = true;  // the stack bottom accumulates into a join point
      b.ladder = true;
      b.ladder_sig0 = pl.ladder_sig0;
      b.ladder_step = ctx.tg.tails[pl.ladder_tail].step;
      s.bands.push_back(b);
      s.last_event_level = lstar;
      s.pending_join = false;
    }

    Rat level(next_level++);
    auto dir_at = [&](size_t i) {
      bool even = i % 2 == 0;
      return (even == lp) ? -1 : +1;
    };

    std::vector<long> new_order;
    size_t c = em.order.size();
    for (size_t i = 0; i < c; ++i) {
      long sid = em.order[i];
      EmStrand& s = em.strands[sid];
      auto [kind, ns] = pl.ops[i];
      switch (kind) {
        case kPass:
          new_order.push_back(sid);
          break;
        case kJoin:
          em_close_band(em, sid, level);
          s.cur_sigma = ns;
          s.pending_join = true;
          s.last_event_level = level;
          new_order.push_back(sid);
          break;
        case kPivot:
          em_close_band(em, sid, level);
          s.cur_sigma = ns;
          s.pending_join = false;
          s.last_event_level = level;
          new_order.push_back(sid);
          break;
        case kDieA: {
          long sid2 = em.order[i + 1];
          em_close_band(em, sid, level);
          em_close_band(em, sid2, level);
          em.events.push_back({EmEvent::Peak, level, {sid, sid2}});
          long ev = static_cast<long>(em.events.size()) - 1;
          em.strands[sid].death_event = ev;
          em.strands[sid].death_level = level;
          em.strands[sid2].death_event = ev;
          em.strands[sid2].death_level = level;
          ++i;
          break;
        }
        case kEndDie: {
          em_close_band(em, sid, level);
          bool left = (i == 0 && lp && dir_at(0) == -1);
          em.events.push_back(
              {left ? EmEvent::EndLeft : EmEvent::EndRight, level, {sid}});
          s.death_event = static_cast<long>(em.events.size()) - 1;
          s.death_level = level;
          if (left)
            lp = false;
          else
            rp = false;
          break;
        }
        default:
          throw std::logic_error("bad plan op");
      }
    }

    if (pl.eb_left) {
      EmStrand s;
      s.birth_level = s.last_event_level = level;
      em.strands.push_back(s);
      long sid = static_cast<long>(em.strands.size()) - 1;
      em.events.push_back({EmEvent::EndLeft, level, {sid}});
      em.strands[sid].birth_event = static_cast<long>(em.events.size()) - 1;
      new_order.insert(new_order.begin(), sid);
      lp = false;
    }
    if (pl.eb_right) {
      EmStrand s;
      s.birth_level = s.last_event_level = level;
      em.strands.push_back(s);
      long sid = static_cast<long>(em.strands.size()) - 1;
      em.events.push_back({EmEvent::EndRight, level, {sid}});
      em.strands[sid].birth_event = static_cast<long>(em.events.size()) - 1;
      new_order.push_back(sid);
      rp = false;
    }

    for (const auto& b : pl.births) {
      long gap = b[0];
      EmStrand sl, sr;
      sl.birth_level = sl.last_event_level = level;
      sr.birth_level = sr.last_event_level = level;
      sl.cur_sigma = b[1];
      sr.cur_sigma = b[2];
      em.strands.push_back(sl);
      long idl = static_cast<long>(em.strands.size()) - 1;
      em.strands.push_back(sr);
      long idr = static_cast<long>(em.strands.size()) - 1;
      em.events.push_back({EmEvent::Valley, level, {idl, idr}});
      long ev = static_cast<long>(em.events.size()) - 1;
      em.strands[idl].birth_event = ev;
      em.strands[idr].birth_event = ev;
      new_order.insert(new_order.begin() + gap, {idl, idr});
    }

    em.order = std::move(new_order);
  }
  if (!em.order.empty()) throw std::logic_error("replay left live strands");
  if (lp || rp) throw std::logic_error("replay left endpoints unused");
  return em;
}

// Builds the tree by walking the event path from the left endpoint.
TreePtr emit_tree(const Emulation& em) {
  // locate endpoint events
  long start_ev = -1, end_ev = -1;
  for (size_t i = 0; i < em.events.size(); ++i) {
    if (em.events[i].kind == EmEvent::EndLeft) start_ev = static_cast<long>(i);
    if (em.events[i].kind == EmEvent::EndRight) end_ev = static_cast<long>(i);
  }
  if (start_ev < 0 || end_ev < 0)
    throw std::logic_error("walk endpoints missing");

  struct Piece {
    const EmStrand* s;
    size_t band_lo, band_hi;  // run of bands [band_lo, band_hi)
    bool descending;
  };
  std::vector<Piece> pieces;

  long cur_ev = start_ev;
  long cur_strand = em.events[start_ev].strands[0];
  bool walking_up =
      em.strands[cur_strand].birth_event == start_ev;  // born here: ascend
  size_t guard = 0;
  for (;;) {
    if (++guard > em.strands.size() * 2 + 4)
      throw std::logic_error("walk failed to terminate");
    const EmStrand& s = em.strands[cur_strand];
    // split the strand's bands into runs separated by hard joins
    std::vector<std::pair<size_t, size_t>> runs;
    size_t start = 0;
    for (size_t i = 1; i <= s.bands.size(); ++i) {
      if (i == s.bands.size() || s.bands[i].join_below) {
        runs.emplace_back(start, i);
        start = i;
      }
    }
    if (walking_up) {
      for (auto& r : runs) pieces.push_back({&s, r.first, r.second, false});
    } else {
      for (auto it = runs.rbegin(); it != runs.rend(); ++it)
        pieces.push_back({&s, it->first, it->second, true});
    }
    long next_ev = walking_up ? s.death_event : s.birth_event;
    if (next_ev < 0) throw std::logic_error("dangling strand end");
    if (next_ev == end_ev) break;
    const EmEvent& ev = em.events[next_ev];
    if (ev.strands.size() != 2) throw std::logic_error("walk hit a dead end");
    long other = ev.strands[0] == cur_strand ? ev.strands[1] : ev.strands[0];
    cur_strand = other;
    walking_up = (ev.kind == EmEvent::Valley);
    cur_ev = next_ev;
    (void)cur_ev;
  }

  // emit one tree node per piece over sequential x intervals
  long m = static_cast<long>(pieces.size());
  std::vector<TreePtr> parts;
  for (long i = 0; i < m; ++i) {
    const Piece& pc = pieces[i];
    Rat x0 = make_rat(i, m), x1 = make_rat(i + 1, m);
    // collect cuts and sigmas for the run
    std::vector<Rat> cuts;
    std::vector<long> sigmas;
    bool has_ladder = false;
    const EmBand* ladder_band = nullptr;
    for (size_t bi = pc.band_lo; bi < pc.band_hi; ++bi) {
      const EmBand& b = pc.s->bands[bi];
      if (b.lo == b.hi) continue;  // join marker placeholder
      if (b.ladder) {
        has_ladder = true;
        ladder_band = &b;
      }
      if (cuts.empty()) cuts.push_back(b.lo);
      cuts.push_back(b.hi);
      sigmas.push_back(b.sigma);
    }
    if (cuts.empty()) continue;
    TreePtr node;
    if (has_ladder) {
      if (sigmas.size() != 1 || !ladder_band)
        throw std::logic_error("ladder run must be isolated");
      TreePtr st = mk_stack(x0, x1, cuts.front(), cuts.back(), {},
                            std::make_pair(ladder_band->ladder_sig0,
                                           ladder_band->ladder_step));
      node = pc.descending ? mk_affine(st, Rat(-1), x0 + x1, Rat(1), Rat(0))
                           : st;
    } else if (sigmas.size() == 1 && sigmas[0] == 1) {
      Rat ya = pc.descending ? cuts.back() : cuts.front();
      Rat yb = pc.descending ? cuts.front() : cuts.back();
      node = mk_segment(x0, ya, x1, yb);
    } else {
      node = mk_strand_stair(x0, x1, cuts, sigmas, pc.descending);
    }
    parts.push_back(node);
  }
  return mk_concat(std::move(parts));
}

TreePtr run_profile_search(const CardinalitySpec& s) {
  SearchCtx ctx;
  ctx.tg = split_targets(s);
  ctx.spec = &s;
  ctx.cap = ctx.tg.cap;
  for (long v = 1; v <= ctx.cap; v += 2) ctx.alphabet.push_back(v);
  if (ctx.tg.finite.size() + ctx.tg.tails.size() > 20)
    throw std::invalid_argument("target set too large for construction");

  std::optional<SPath> path;
  for (long budget : {2, 3, 4}) {
    ctx.budget = budget;
    path = profile_search(ctx);
    if (path) break;
  }
  if (!path) throw std::logic_error("construction search exhausted");
  Emulation em = replay(ctx, *path);
  return emit_tree(em);
}

// ---------------------------------------------------------------------------
// Analytic recipes for the two easy Proposition 1 cases.
// ---------------------------------------------------------------------------

// Odd targets as stacked constant stairs, seams counting 1.
TreePtr case1_ladder(const CardinalitySpec& s) {
  Targets tg = split_targets(s);
  std::vector<long> head;
  for (long v : tg.finite)
    if (v >= 3) head.push_back(v);
  std::optional<std::pair<long, long>> tail;
  if (!tg.tails.empty()) tail = std::make_pair(tg.tails[0].start, tg.tails[0].step);
  if (head.empty() && !tail)
    return mk_segment(Rat(0), Rat(0), Rat(1), Rat(1));
  return mk_stack(Rat(0), Rat(1), Rat(0), Rat(1), head, tail);
}

// Tent: odd targets below the fold value, evens minus one above, and a
// descending unit tail adding one crossing to the upper region.
TreePtr case2_tent(const CardinalitySpec& s) {
  Targets tg = split_targets(s);
  std::vector<long> lower_head, upper_head;
  std::optional<std::pair<long, long>> lower_tail, upper_tail;
  for (long v : tg.finite) {
    if (v == 1 || v == 2) continue;
    if (v % 2 == 1)
      lower_head.push_back(v);
    else
      upper_head.push_back(v - 1);
  }
  for (const auto& pr : tg.tails) {
    if (pr.start % 2 == 1)
      lower_tail = std::make_pair(pr.start, pr.step);
    else
      upper_tail = std::make_pair(pr.start - 1, pr.step);
  }
  if (lower_head.empty() && !lower_tail) lower_head.push_back(1);
  if (upper_head.empty() && !upper_tail) upper_head.push_back(1);
  Rat half = make_rat(1, 2);
  TreePtr lower = mk_stack(Rat(0), make_rat(1, 4), Rat(0), half,
                           lower_head, lower_tail);
  TreePtr upper = mk_stack(make_rat(1, 4), half, half, Rat(1),
                           upper_head, upper_tail);
  TreePtr down = mk_segment(half, Rat(1), Rat(1), half);
  return mk_concat({lower, upper, down});
}

}  // namespace

Construction construct_continuous(const CardinalitySpec& s) {
  if (s.includes_infinity)
    throw std::invalid_argument("infinity not allowed here");
  if (!decide_continuous(s))
    throw std::invalid_argument("not continuously realizable");
  auto [m1, m2] = minmax(s);
  (void)m2;

  RecipeCase recipe;
  TreePtr tree;
  bool has_one = s.contains(1);
  bool has_two = s.contains(2);
  // parity content of S minus {0, 1}
  bool any_even = false, any_odd_beyond1 = false;
  for (long b : s.base) {
    if (b >= 2 && b % 2 == 0) any_even = true;
    if (b >= 3 && b % 2 == 1) any_odd_beyond1 = true;
  }
  if (s.tail) {
    if (s.tail->step % 2 == 1) {
      any_even = any_odd_beyond1 = true;
    } else if (s.tail->start % 2 == 0) {
      any_even = true;
    } else {
      any_odd_beyond1 = s.tail->start >= 3 || any_odd_beyond1;
    }
  }

  if (has_one) {
    if (!any_even && !any_odd_beyond1) {
      recipe = RecipeCase::Identity;
      tree = mk_segment(Rat(0), Rat(0), Rat(1), Rat(1));
    } else if (!any_even) {
      recipe = RecipeCase::Prop1Case1;
      tree = case1_ladder(s);
    } else if (has_two) {
      recipe = RecipeCase::Prop1Case2;
      tree = case2_tent(s);
    } else {
      // r = min(S minus {0,1})
      long r = -1;
      for (long v : s.members_up_to(1L << 20))
        if (v >= 2) {
          r = v;
          break;
        }
      if (!any_odd_beyond1)
        recipe = RecipeCase::Prop1Case5;
      else if (r % 2 == 1)
        recipe = RecipeCase::Prop1Case3;
      else
        recipe = RecipeCase::Prop1Case4;
      tree = run_profile_search(s);
    }
  } else {
    // type I iff every even member is exceeded by an odd member
    bool type1;
    if (s.tail && s.tail->step % 2 == 1) {
      type1 = true;  // both parities unbounded
    } else if (s.tail && s.tail->start % 2 == 1) {
      type1 = true;  // odd members unbounded
    } else if (s.tail) {
      type1 = false;  // even members unbounded, odds bounded
    } else {
      type1 = (*s.base.rbegin()) % 2 == 1;
    }
    recipe = type1 ? RecipeCase::Thm1Case1 : RecipeCase::Thm1Case2;
    tree = run_profile_search(s);
  }

  OmegaSet om = omega_sym(tree);
  if (!om.matches(s))
    throw std::logic_error("construction verification failed: got " +
                           om.str() + " for " + s.str());
  return {tree, recipe, om};
}

// ---------------------------------------------------------------------------
// S united with {infinity}: plateau transitions absorb every band change, so
// the band values can walk through the evens ascending then the odds
// descending; both domain endpoints ride on plateau shelves.
// ---------------------------------------------------------------------------

Construction construct_with_infinity(const CardinalitySpec& a) {
  if (!a.contains(0)) throw std::invalid_argument("0 must belong to S");
  if (!a.is_finite())
    throw std::invalid_argument("infinite base not supported with infinity");
  std::vector<long> members;
  for (long b : a.base)
    if (b > 0) members.push_back(b);

  if (members.empty()) {
    TreePtr t = mk_plateau(Rat(0), Rat(1), Rat(0));
    OmegaSet om = omega_sym(t);
    CardinalitySpec want = a;
    want.includes_infinity = true;
    if (!om.matches(want))
      throw std::logic_error("construction verification failed");
    return {t, RecipeCase::WithInfinity, om};
  }

  // band walk: evens ascending, then odds descending
  std::vector<long> bands;
  for (long v : members)
    if (v % 2 == 0) bands.push_back(v);
  std::vector<long> odds;
  for (long v : members)
    if (v % 2 == 1) odds.push_back(v);
  std::sort(bands.begin(), bands.end());
  std::sort(odds.rbegin(), odds.rend());
  bands.insert(bands.end(), odds.begin(), odds.end());

  // flat-sweep: strands are plain monotone crossings, every transition level
  // is a plateau level
  struct FStrand {
    int dir;
    std::vector<std::pair<Rat, Rat>> pts;  // event anchors (unused for x)
  };

  // we only need the piece walk, so track events symbolically
  struct FEvent {
    enum Kind { VFlat, PFlat, EndUp, EndDown } kind;
    Rat level;
    std::vector<long> strands;
  };
  std::vector<FEvent> events;
  struct FRec {
    long birth_ev = -1, death_ev = -1;
    Rat birth_level, death_level;
  };
  std::vector<FRec> recs;
  std::vector<long> order;
  bool lp = true, rp = true;

  auto dir_at = [&](size_t i) {
    bool even = i % 2 == 0;
    return (even == lp) ? -1 : +1;
  };

  long T = static_cast<long>(bands.size());
  for (long lev = 0; lev <= T; ++lev) {
    Rat level(lev);
    long before = static_cast<long>(order.size());
    long target = lev < T ? bands[lev] : 0;
    long delta = target - before;
    // endpoint assignment: the parity boundary and the final transition get
    // one endpoint each when odd deltas exist; otherwise both ride at the
    // first transition
    bool parity_odd = (delta % 2 + 2) % 2 == 1;
    long end_up = 0, end_down = 0;
    if (parity_odd) {
      if (delta > 0)
        end_up = 1;
      else
        end_down = 1;
    } else if (lev == 0 && odds.empty()) {
      end_up = 2;  // no odd transitions anywhere: both ends start here
    }
    long rest = delta - end_up + end_down;
    long dd = rest > 0 ? rest / 2 : 0;
    long uu = rest < 0 ? (-rest) / 2 : 0;

    // deaths first
    for (long k = 0; k < uu; ++k) {
      bool done = false;
      for (size_t i = order.size(); i-- >= 1;) {
        if (i == 0) break;
        if (dir_at(i - 1) == +1 && dir_at(i) == -1) {
          long a = order[i - 1], b = order[i];
          events.push_back({FEvent::PFlat, level, {a, b}});
          recs[a].death_ev = recs[b].death_ev =
              static_cast<long>(events.size()) - 1;
          recs[a].death_level = recs[b].death_level = level;
          order.erase(order.begin() + (i - 1), order.begin() + (i + 1));
          done = true;
          break;
        }
      }
      if (!done) throw std::logic_error("flat sweep death failed");
    }
    for (long k = 0; k < end_down; ++k) {
      if (rp && !order.empty() && dir_at(order.size() - 1) == +1) {
        long a = order.back();
        events.push_back({FEvent::EndDown, level, {a}});
        recs[a].death_ev = static_cast<long>(events.size()) - 1;
        recs[a].death_level = level;
        order.pop_back();
        rp = false;
      } else if (lp && !order.empty() && dir_at(0) == -1) {
        long a = order.front();
        events.push_back({FEvent::EndDown, level, {a}});
        recs[a].death_ev = static_cast<long>(events.size()) - 1;
        recs[a].death_level = level;
        order.erase(order.begin());
        lp = false;
      } else {
        throw std::logic_error("flat sweep endpoint death failed");
      }
    }
    for (long k = 0; k < end_up; ++k) {
      if (lp) {
        recs.push_back({});
        long id = static_cast<long>(recs.size()) - 1;
        events.push_back({FEvent::EndUp, level, {id}});
        recs[id].birth_ev = static_cast<long>(events.size()) - 1;
        recs[id].birth_level = level;
        order.insert(order.begin(), id);
        lp = false;
      } else if (rp) {
        recs.push_back({});
        long id = static_cast<long>(recs.size()) - 1;
        events.push_back({FEvent::EndUp, level, {id}});
        recs[id].birth_ev = static_cast<long>(events.size()) - 1;
        recs[id].birth_level = level;
        order.push_back(id);
        rp = false;
      } else {
        throw std::logic_error("flat sweep endpoint birth failed");
      }
    }
    for (long k = 0; k < dd; ++k) {
      // rightmost above gap
      long gap = -1;
      for (long g = static_cast<long>(order.size()); g >= 0; --g) {
        bool above = g == 0 ? lp : dir_at(g - 1) == +1;
        if (above) {
          gap = g;
          break;
        }
      }
      if (gap < 0) throw std::logic_error("flat sweep birth failed");
      recs.push_back({});
      long idl = static_cast<long>(recs.size()) - 1;
      recs.push_back({});
      long idr = static_cast<long>(recs.size()) - 1;
      events.push_back({FEvent::VFlat, level, {idl, idr}});
      recs[idl].birth_ev = recs[idr].birth_ev =
          static_cast<long>(events.size()) - 1;
      recs[idl].birth_level = recs[idr].birth_level = level;
      order.insert(order.begin() + gap, {idl, idr});
    }
    if (static_cast<long>(order.size()) != target)
      throw std::logic_error("flat sweep band mismatch");
  }
  if (lp || rp) throw std::logic_error("flat sweep endpoints unused");

  // walk: pieces are strand segments and the plateau shelves at events
  long start_ev = -1, final_ev = -1;
  std::vector<char> is_end(events.size(), 0);
  for (size_t i = 0; i < events.size(); ++i)
    if (events[i].kind == FEvent::EndUp || events[i].kind == FEvent::EndDown) {
      if (start_ev < 0)
        start_ev = static_cast<long>(i);
      else
        final_ev = static_cast<long>(i);
      is_end[i] = 1;
    }
  if (start_ev < 0 || final_ev < 0)
    throw std::logic_error("flat sweep missing endpoints");

  struct FPiece {
    bool is_flat;
    Rat lo, hi;       // segment values
    Rat flat_level;   // flat value
    bool descending;
  };
  std::vector<FPiece> pieces;
  // start at the left endpoint: emit its shelf first
  long cur_ev = start_ev;
  pieces.push_back({true, Rat(0), Rat(0), events[start_ev].level, false});
  long cur = events[start_ev].strands[0];
  bool walking_up = recs[cur].birth_ev == cur_ev;
  size_t guard = 0;
  for (;;) {
    if (++guard > recs.size() * 2 + 4)
      throw std::logic_error("flat walk failed to terminate");
    Rat lo = recs[cur].birth_level, hi = recs[cur].death_level;
    pieces.push_back({false, lo, hi, Rat(0), !walking_up});
    long next_ev = walking_up ? recs[cur].death_ev : recs[cur].birth_ev;
    pieces.push_back({true, Rat(0), Rat(0), events[next_ev].level, false});
    if (next_ev == final_ev) break;
    const FEvent& ev = events[next_ev];
    if (ev.strands.size() != 2)
      throw std::logic_error("flat walk hit a dead end");
    cur = ev.strands[0] == cur ? ev.strands[1] : ev.strands[0];
    walking_up = (ev.kind == FEvent::VFlat);
  }

  long m = static_cast<long>(pieces.size());
  std::vector<TreePtr> parts;
  for (long i = 0; i < m; ++i) {
    const FPiece& pc = pieces[i];
    Rat x0 = make_rat(i, m), x1 = make_rat(i + 1, m);
    if (pc.is_flat) {
      parts.push_back(mk_plateau(x0, x1, pc.flat_level));
    } else {
      Rat ya = pc.descending ? pc.hi : pc.lo;
      Rat yb = pc.descending ? pc.lo : pc.hi;
      parts.push_back(mk_segment(x0, ya, x1, yb));
    }
  }
  TreePtr tree = mk_concat(std::move(parts));
  OmegaSet om = omega_sym(tree);
  CardinalitySpec want = a;
  want.includes_infinity = true;
  if (!om.matches(want))
    throw std::logic_error("construction verification failed: got " +
                           om.str() + " for " + want.str());
  return {tree, RecipeCase::WithInfinity, om};
}

}  // namespace omegaforge
