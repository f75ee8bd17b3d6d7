#include "omegaforge/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace omegaforge {

bool ShapeWord::is_canonical() const {
  std::vector<long> rev(values.rbegin(), values.rend());
  return values <= rev;
}

PLFunction ShapeWord::to_pl() const {
  std::vector<std::pair<Rat, Rat>> bps;
  long n = static_cast<long>(values.size());
  for (long i = 0; i < n; ++i)
    bps.emplace_back(make_rat(i, n - 1), Rat(values[i]));
  return make_pl(std::move(bps));
}

std::set<long> ShapeWord::spectrum() const {
  std::set<long> out{0};
  long lo = *std::min_element(values.begin(), values.end());
  long hi = *std::max_element(values.begin(), values.end());
  size_t n = values.size();
  // integer levels
  for (long y = lo; y <= hi; ++y) {
    long c = 0;
    for (size_t i = 0; i < n; ++i) {
      if (values[i] == y) ++c;
    }
    for (size_t i = 0; i + 1 < n; ++i) {
      long a = values[i], b = values[i + 1];
      if ((a < y && y < b) || (b < y && y < a)) ++c;
    }
    out.insert(c);
  }
  // half-integer bands
  for (long y2 = 2 * lo + 1; y2 < 2 * hi; y2 += 2) {
    long c = 0;
    for (size_t i = 0; i + 1 < n; ++i) {
      long a = 2 * values[i], b = 2 * values[i + 1];
      if ((a < y2 && y2 < b) || (b < y2 && y2 < a)) ++c;
    }
    out.insert(c);
  }
  return out;
}

void enum_shapes(long max_extrema, long max_levels,
                 const std::function<bool(const ShapeWord&)>& visit,
                 long budget) {
  if (max_extrema < 0 || max_levels < 1)
    throw std::invalid_argument("bounds must be positive");
  long visited = 0;
  std::vector<long> word;
  bool stopped = false;

  // depth-first over zigzag words; emit only canonical representatives
  std::function<void(long)> rec = [&](long extrema_left) {
    if (stopped) return;
    if (word.size() >= 2) {
      ShapeWord w{word};
      if (w.is_canonical()) {
        if (++visited > budget)
          throw std::runtime_error("enumeration budget exceeded");
        if (!visit(w)) {
          stopped = true;
          return;
        }
      }
    }
    if (word.size() >= 2 && extrema_left == 0) return;
    if (word.empty()) {
      for (long v = 1; v <= max_levels && !stopped; ++v) {
        word.push_back(v);
        rec(extrema_left);
        word.pop_back();
      }
      return;
    }
    long prev = word.back();
    bool rising;
    if (word.size() == 1) {
      for (long v = 1; v <= max_levels && !stopped; ++v) {
        if (v == prev) continue;
        word.push_back(v);
        rec(extrema_left);
        word.pop_back();
      }
      return;
    }
    rising = word[word.size() - 2] < prev;
    // next segment must turn: fall after a rise, rise after a fall
    if (extrema_left == 0) return;
    for (long v = 1; v <= max_levels && !stopped; ++v) {
      bool ok = rising ? v < prev : v > prev;
      if (!ok) continue;
      word.push_back(v);
      rec(extrema_left - 1);
      word.pop_back();
    }
  };
  rec(max_extrema);
}

std::set<std::set<long>> achievable_sets(long max_extrema, long max_levels,
                                         long budget) {
  std::set<std::set<long>> out;
  enum_shapes(max_extrema, max_levels,
              [&](const ShapeWord& w) {
                out.insert(w.spectrum());
                return true;
              },
              budget);
  return out;
}

DifferentialReport differential_thm2(long max_extrema, long max_levels,
                                     long budget) {
  DifferentialReport rep;
  std::map<std::set<long>, ShapeWord> spectra;
  enum_shapes(max_extrema, max_levels,
              [&](const ShapeWord& w) {
                ++rep.shapes;
                auto sp = w.spectrum();
                spectra.emplace(std::move(sp), w);
                return true;
              },
              budget);
  rep.spectra = static_cast<long>(spectra.size());

  long max_count = 0;
  for (const auto& [sp, w] : spectra)
    max_count = std::max(max_count, *sp.rbegin());

  // soundness: every enumerated spectrum must be accepted
  for (const auto& [sp, w] : spectra) {
    CardinalitySpec s;
    s.base = sp;
    if (!decide_analytic(s).has_value()) rep.soundness_gaps.emplace_back(sp, w);
  }

  // completeness (advisory): accepted sets over the same count range that
  // enumeration никогда produced
  if (max_count >= 1 && max_count <= 20) {
    std::vector<long> pool;
    for (long v = 1; v <= max_count; ++v) pool.push_back(v);
    for (uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
      CardinalitySpec s;
      s.base.insert(0);
      for (size_t i = 0; i < pool.size(); ++i)
        if (mask & (1u << i)) s.base.insert(pool[i]);
      if (s.base.size() < 2) continue;
      if (!decide_analytic(s).has_value()) continue;
      if (!spectra.count(s.base)) rep.completeness_gaps.push_back(s.base);
    }
  }
  return rep;
}

namespace {

int role_count(EndpointRole r) { return r == EndpointRole::None ? 0 : 1; }

}  // namespace

TripleClass classification_cases(long interior_minima, long interior_maxima,
                                 EndpointRole left, EndpointRole right) {
  if (interior_minima < 0 || interior_maxima < 0)
    throw std::invalid_argument("unrealizable composition");
  long em = (left == EndpointRole::Min ? 1 : 0) +
            (right == EndpointRole::Min ? 1 : 0);
  long eM = (left == EndpointRole::Max ? 1 : 0) +
            (right == EndpointRole::Max ? 1 : 0);
  long e = role_count(left) + role_count(right);
  long l = interior_minima + em;
  long r = interior_maxima + eM;
  if (l + r == 0) throw std::invalid_argument("unrealizable composition");

  // synthesize the local configuration around level 0 with guard values +-1
  std::vector<long> word;
  long cur;  // current off-level value, +1 or -1
  if (left == EndpointRole::Min) {
    word = {0, 1};
    cur = 1;
  } else if (left == EndpointRole::Max) {
    word = {0, -1};
    cur = -1;
  } else {
    word = {1};
    cur = 1;
  }
  for (long i = 0; i < interior_minima; ++i) {
    if (cur < 0) {
      word.push_back(1);
      cur = 1;
    }
    word.push_back(0);
    word.push_back(1);
  }
  for (long i = 0; i < interior_maxima; ++i) {
    if (cur > 0) {
      word.push_back(-1);
      cur = -1;
    }
    word.push_back(0);
    word.push_back(-1);
  }
  if (right == EndpointRole::Min) {
    if (cur < 0) {
      word.push_back(1);
      cur = 1;
    }
    word.push_back(0);
  } else if (right == EndpointRole::Max) {
    if (cur > 0) {
      word.push_back(-1);
      cur = -1;
    }
    word.push_back(0);
  }
  if (word.size() < 2) throw std::invalid_argument("unrealizable composition");

  // measure (below, at, above)
  long below = 0, at = 0, above = 0;
  size_t n = word.size();
  for (size_t i = 0; i < n; ++i)
    if (word[i] == 0) ++at;
  for (size_t i = 0; i + 1 < n; ++i) {
    long a = 2 * word[i], b = 2 * word[i + 1];
    if ((a < -1 && -1 < b) || (b < -1 && -1 < a)) ++below;
    if ((a < 0 && 0 < b) || (b < 0 && 0 < a)) ++at;
    if ((a < 1 && 1 < b) || (b < 1 && 1 < a)) ++above;
  }

  auto cls = classify_triple(below, at, above);
  if (cls.empty())
    throw std::invalid_argument("composition yields no class");
  TripleClass got = cls.front();

  // corrected only-if table, endpoint extrema included in l and r, the
  // coinciding k = 0 parameterizations labelled with the minus sign
  TripleClass expected;
  if (e == 0) {
    if (r < l)
      expected = TripleClass::APlus;
    else if (r > l)
      expected = TripleClass::AMinus;
    else
      throw std::invalid_argument("composition yields no class");
  } else if (e == 1) {
    if (em == 1)
      expected = r < l ? TripleClass::BPlus : TripleClass::BMinus;
    else
      expected = r <= l ? TripleClass::BPlus : TripleClass::BMinus;
  } else {
    if (em == 1 && eM == 1)
      expected = r <= l ? TripleClass::CPlus : TripleClass::CMinus;
    else if (eM == 2)
      expected = r <= l + 1 ? TripleClass::CPlus : TripleClass::CMinus;
    else
      expected = r < l ? TripleClass::CPlus : TripleClass::CMinus;
  }
  if (got != expected)
    throw std::logic_error("classification table mismatch");
  return got;
}

}  // namespace omegaforge
