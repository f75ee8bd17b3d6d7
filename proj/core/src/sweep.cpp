#include "omegaforge/sweep.hpp"

#include <algorithm>
#include <stdexcept>

#include "omegaforge/decide.hpp"

namespace omegaforge {

namespace {

constexpr int kLeft = -1;   // strand moves left as the sweep ascends
constexpr int kRight = +1;  // strand moves right

[[noreturn]] void dead_end() {
  throw std::runtime_error("witness construction failed");
}

struct Strand {
  int dir;
  Rat pos;
  std::vector<std::pair<Rat, Rat>> verts;
};

// Per-level event schedule derived from a triple class variant.
struct LevelEvents {
  long births = 0;
  long deaths = 0;
  bool eb_left = false, eb_right = false;
  bool ed_left = false, ed_right = false;
};

struct Sweeper {
  std::vector<Strand> strands;
  bool left_pending = true;
  bool right_pending = true;
  std::vector<std::vector<std::pair<Rat, Rat>>> finished;

  bool gap_above(size_t gap) const {
    if (gap == 0) return left_pending;
    return strands[gap - 1].dir == kRight;
  }

  void apply_level(const Rat& v, const LevelEvents& ev) {
    const size_t c = strands.size();
    std::vector<char> dying(c, 0);

    // Endpoint deaths claim the boundary strands.
    if (ev.ed_left) {
      if (!left_pending || c == 0 || strands.front().dir != kLeft) dead_end();
      dying[0] = 1;
    }
    if (ev.ed_right) {
      if (!right_pending || c == 0 || strands.back().dir != kRight ||
          dying[c - 1])
        dead_end();
      dying[c - 1] = 1;
    }

    // Interior deaths: rightmost adjacent (R, L) pairs in the pre-level
    // order. Pairs only form from strands adjacent before this level; a
    // same-level cascade would collapse several maxima into one point.
    std::vector<size_t> pairs;
    {
      long need = ev.deaths;
      size_t i = c;
      while (need > 0 && i >= 2) {
        --i;
        if (!dying[i - 1] && !dying[i] && strands[i - 1].dir == kRight &&
            strands[i].dir == kLeft) {
          dying[i - 1] = dying[i] = 1;
          pairs.push_back(i - 1);
          --need;
          if (i >= 1) --i;
        }
      }
      if (need > 0) dead_end();
    }

    // Final vertices for dying strands.
    if (ev.ed_left) strands.front().verts.emplace_back(Rat(0), v);
    if (ev.ed_right) strands.back().verts.emplace_back(Rat(1), v);
    for (size_t a : pairs) {
      Rat x = (strands[a].pos + strands[a + 1].pos) / 2;
      strands[a].verts.emplace_back(x, v);
      strands[a + 1].verts.emplace_back(x, v);
    }

    // Drift the survivors: left movers shrink, right movers grow, windows
    // bounded by the old positions of the neighbours in the full order.
    {
      Rat prev_new(0);
      std::vector<Rat> np(c);
      for (size_t i = 0; i < c; ++i) {
        if (dying[i]) continue;
        Rat old_prev = i == 0 ? Rat(0) : strands[i - 1].pos;
        Rat old_next = i + 1 < c ? Rat(strands[i + 1].pos) : Rat(1);
        Rat lo = strands[i].dir == kRight ? strands[i].pos : old_prev;
        Rat hi = strands[i].dir == kLeft ? Rat(strands[i].pos) : old_next;
        if (lo < prev_new) lo = prev_new;
        if (!(lo < hi)) dead_end();
        np[i] = (lo + hi) / 2;
        prev_new = np[i];
      }
      for (size_t i = 0; i < c; ++i) {
        if (dying[i]) continue;
        strands[i].pos = np[i];
        strands[i].verts.emplace_back(np[i], v);
      }
    }

    // Remove the dead.
    {
      std::vector<Strand> keep;
      keep.reserve(c);
      for (size_t i = 0; i < c; ++i) {
        if (dying[i])
          finished.push_back(std::move(strands[i].verts));
        else
          keep.push_back(std::move(strands[i]));
      }
      strands = std::move(keep);
    }
    if (ev.ed_left) left_pending = false;
    if (ev.ed_right) right_pending = false;

    // Endpoint births sit at the extreme positions.
    if (ev.eb_left) {
      if (!left_pending) dead_end();
      if (!strands.empty() && !(Rat(0) < strands.front().pos)) dead_end();
      strands.insert(strands.begin(), Strand{kRight, Rat(0), {{Rat(0), v}}});
      left_pending = false;
    }
    if (ev.eb_right) {
      if (!right_pending) dead_end();
      if (!strands.empty() && !(strands.back().pos < Rat(1))) dead_end();
      strands.push_back(Strand{kLeft, Rat(1), {{Rat(1), v}}});
      right_pending = false;
    }

    // Interior births, each at the rightmost gap lying above the level.
    for (long b = 0; b < ev.births; ++b) {
      bool placed = false;
      for (size_t gap = strands.size() + 1; gap-- > 0;) {
        if (!gap_above(gap)) continue;
        Rat lo = gap == 0 ? Rat(0) : strands[gap - 1].pos;
        Rat hi = gap == strands.size() ? Rat(1) : strands[gap].pos;
        if (!(lo < hi)) continue;
        Rat x = (lo + hi) / 2;
        Strand l{kLeft, x, {{x, v}}};
        Strand r{kRight, x, {{x, v}}};
        strands.insert(strands.begin() + gap, {std::move(l), std::move(r)});
        placed = true;
        break;
      }
      if (!placed) dead_end();
    }

    for (size_t j = 0; j + 1 < strands.size(); ++j)
      if (strands[j].dir == strands[j + 1].dir) dead_end();
  }
};

// Event variants realizing a classified triple at one level. For one level,
// point count = passers + births + deaths + endpoint events, and the band
// change is 2*births - 2*deaths + endpoint births - endpoint deaths.
std::vector<LevelEvents> variants_for(TripleClass cls, long k) {
  std::vector<LevelEvents> out;
  auto mk = [](long net, int eb, int ed) {
    LevelEvents e;
    if (net >= 0)
      e.births = net;
    else
      e.deaths = -net;
    e.eb_left = eb >= 1;
    e.eb_right = eb >= 2;
    e.ed_left = ed >= 1;
    e.ed_right = ed >= 2;
    return e;
  };
  switch (cls) {
    case TripleClass::APlus:
      out.push_back(mk(k, 0, 0));
      break;
    case TripleClass::AMinus:
      out.push_back(mk(-k, 0, 0));
      break;
    case TripleClass::BPlus:
      out.push_back(mk(k - 1, 1, 0));
      out.push_back(mk(k, 0, 1));
      break;
    case TripleClass::BMinus:
      out.push_back(mk(-k, 0, 1));
      out.push_back(mk(-(k + 1), 1, 0));
      break;
    case TripleClass::CPlus:
      out.push_back(mk(k - 2, 2, 0));
      out.push_back(mk(k - 1, 1, 1));
      out.push_back(mk(k, 0, 2));
      break;
    case TripleClass::CMinus:
      out.push_back(mk(-k, 0, 2));
      out.push_back(mk(-(k + 1), 1, 1));
      out.push_back(mk(-(k + 2), 2, 0));
      break;
  }
  return out;
}

long param_k(TripleClass cls, long n, long mid) {
  bool plus = cls == TripleClass::APlus || cls == TripleClass::BPlus ||
              cls == TripleClass::CPlus;
  return plus ? mid - n : n - mid;
}

struct Attempt {
  std::vector<LevelEvents> levels;
};

// Deterministic enumeration of variant and endpoint-side assignments for
// the B or C triples; A triples have a single schedule.
std::vector<Attempt> enumerate_attempts(const std::vector<TripleClass>& classes,
                                        const std::vector<long>& ks) {
  size_t m = classes.size();
  std::vector<size_t> special;
  for (size_t i = 0; i < m; ++i)
    if (triple_family(classes[i]) != 'A') special.push_back(i);

  bool has_c = !special.empty() && triple_family(classes[special[0]]) == 'C';
  std::vector<bool> side_orders = has_c ? std::vector<bool>{true}
                                        : std::vector<bool>{true, false};

  std::vector<std::vector<LevelEvents>> menus;
  for (size_t idx : special) menus.push_back(variants_for(classes[idx], ks[idx]));

  std::vector<Attempt> out;
  std::vector<size_t> pick(special.size(), 0);
  for (bool first_left : side_orders) {
    std::fill(pick.begin(), pick.end(), 0);
    for (;;) {
      Attempt at;
      at.levels.resize(m);
      for (size_t i = 0; i < m; ++i)
        if (triple_family(classes[i]) == 'A')
          at.levels[i] = variants_for(classes[i], ks[i]).front();
      int b_seen = 0;
      for (size_t j = 0; j < special.size(); ++j) {
        LevelEvents e = menus[j][pick[j]];
        if (triple_family(classes[special[j]]) == 'B') {
          bool use_left = (b_seen == 0) == first_left;
          ++b_seen;
          bool birth = e.eb_left;
          e.eb_left = e.eb_right = e.ed_left = e.ed_right = false;
          if (birth)
            (use_left ? e.eb_left : e.eb_right) = true;
          else
            (use_left ? e.ed_left : e.ed_right) = true;
        }
        at.levels[special[j]] = e;
      }
      out.push_back(std::move(at));
      size_t j = 0;
      while (j < pick.size() && ++pick[j] == menus[j].size()) {
        pick[j] = 0;
        ++j;
      }
      if (j == pick.size()) break;
    }
  }
  return out;
}

PLFunction run_attempt(const std::vector<long>& x, const Attempt& at) {
  size_t m = at.levels.size();
  Sweeper sw;
  for (size_t i = 0; i < m; ++i) {
    Rat level(static_cast<long>(i + 1));
    sw.apply_level(level, at.levels[i]);
    if (static_cast<long>(sw.strands.size()) != x[2 * (i + 1)]) dead_end();
  }
  if (!sw.strands.empty() || sw.left_pending || sw.right_pending) dead_end();

  std::vector<std::pair<Rat, Rat>> verts;
  for (auto& poly : sw.finished)
    for (auto& p : poly) verts.push_back(p);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (size_t i = 0; i + 1 < verts.size(); ++i)
    if (verts[i].first == verts[i + 1].first) dead_end();
  return make_pl(std::move(verts));
}

}  // namespace

PLFunction build_witness(const ExtremaSequence& seq) {
  const auto& x = seq.values;
  if (x.size() < 3 || x.size() % 2 == 0 || x.front() != 0 || x.back() != 0)
    throw std::invalid_argument("not analytically realizable");
  for (long v : x)
    if (v < 0) throw std::invalid_argument("not analytically realizable");

  std::vector<TripleClass> classes;
  std::vector<long> ks;
  long b_count = 0, c_count = 0;
  for (size_t i = 0; i + 2 < x.size(); i += 2) {
    auto cls = classify_triple(x[i], x[i + 1], x[i + 2]);
    if (cls.empty()) throw std::invalid_argument("not analytically realizable");
    classes.push_back(cls.front());
    ks.push_back(param_k(cls.front(), x[i], x[i + 1]));
    char fam = triple_family(cls.front());
    if (fam == 'B') ++b_count;
    if (fam == 'C') ++c_count;
  }
  bool iv = (b_count == 2 && c_count == 0) || (b_count == 0 && c_count == 1);
  if (!iv) throw std::invalid_argument("not analytically realizable");

  // An interior zero band would disconnect the range.
  for (size_t i = 2; i + 1 < x.size(); i += 2)
    if (x[i] == 0) dead_end();

  for (const Attempt& at : enumerate_attempts(classes, ks)) {
    bool plausible = true;
    for (size_t i = 0; i < at.levels.size(); ++i) {
      const LevelEvents& e = at.levels[i];
      long consumed = 2 * e.deaths + (e.ed_left ? 1 : 0) + (e.ed_right ? 1 : 0);
      if (e.births < 0 || consumed > x[2 * i]) plausible = false;
    }
    if (!plausible) continue;
    try {
      PLFunction f = run_attempt(x, at);
      auto check = extract_sequence(omega_pl(f));
      if (check.values != x) continue;
      return f;
    } catch (const std::exception&) {
      continue;
    }
  }
  dead_end();
}

}  // namespace omegaforge
