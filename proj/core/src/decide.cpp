#include "omegaforge/decide.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "omegaforge/sweep.hpp"

namespace omegaforge {

bool CardinalitySpec::contains(long n) const {
  if (n < 0) return false;
  if (base.count(n)) return true;
  if (tail && n >= tail->start && (n - tail->start) % tail->step == 0)
    return true;
  return false;
}

std::vector<long> CardinalitySpec::members_up_to(long bound) const {
  std::vector<long> out;
  for (long b : base)
    if (b <= bound) out.push_back(b);
  if (tail)
    for (long v = tail->start; v <= bound; v += tail->step) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string CardinalitySpec::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (long b : base) {
    if (!first) os << ",";
    os << b;
    first = false;
  }
  if (tail) {
    if (!first) os << ",";
    os << tail->start << "+" << tail->step << "...";
    first = false;
  }
  if (includes_infinity) {
    if (!first) os << ",";
    os << "inf";
  }
  os << "}";
  return os.str();
}

std::optional<CardinalitySpec> parse_spec(const std::string& text,
                                          std::string* error) {
  auto fail = [&](const std::string& msg,
                  size_t pos) -> std::optional<CardinalitySpec> {
    if (error) {
      std::ostringstream os;
      os << msg << " at position " << pos;
      *error = os.str();
    }
    return std::nullopt;
  };
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '{') return fail("expected '{'", i);
  ++i;
  CardinalitySpec spec;
  bool expecting_item = true;
  while (true) {
    skip_ws();
    if (i >= text.size()) return fail("unterminated set", i);
    if (text[i] == '}') {
      if (expecting_item && !spec.base.empty())
        return fail("trailing comma", i);
      ++i;
      break;
    }
    if (!expecting_item) return fail("expected ',' or '}'", i);
    if (text.compare(i, 3, "inf") == 0) {
      spec.includes_infinity = true;
      i += 3;
    } else if (text[i] == '+') {
      // ",+d..." spelling: the previous base element is the tail start.
      if (spec.base.empty()) return fail("tail start missing", i);
      ++i;
      size_t ds = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (ds == i) return fail("expected step after '+'", i);
      long step = std::stol(text.substr(ds, i - ds));
      if (step <= 0) return fail("tail step must be positive", ds);
      if (text.compare(i, 3, "...") != 0)
        return fail("expected '...' after tail step", i);
      i += 3;
      if (spec.tail) return fail("duplicate tail", ds);
      long start = *spec.base.rbegin();
      spec.base.erase(std::prev(spec.base.end()));
      spec.tail = CardinalitySpec::Tail{start, step};
    } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      long v = std::stol(text.substr(start, i - start));
      skip_ws();
      if (i < text.size() && text[i] == '+') {
        ++i;
        size_t ds = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (ds == i) return fail("expected step after '+'", i);
        long step = std::stol(text.substr(ds, i - ds));
        if (step <= 0) return fail("tail step must be positive", ds);
        if (text.compare(i, 3, "...") != 0)
          return fail("expected '...' after tail step", i);
        i += 3;
        if (spec.tail) return fail("duplicate tail", start);
        spec.tail = CardinalitySpec::Tail{v, step};
      } else {
        spec.base.insert(v);
      }
    } else {
      return fail("expected number, tail or 'inf'", i);
    }
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
      expecting_item = true;
    } else {
      expecting_item = false;
    }
  }
  skip_ws();
  if (i != text.size()) return fail("trailing characters", i);
  return spec;
}

std::pair<long, long> minmax(const CardinalitySpec& s) {
  long m1 = -1;
  for (long b : s.base)
    if (b > 0) {
      m1 = b;
      break;
    }
  if (s.tail) {
    long t0 = s.tail->start == 0 ? s.tail->start + s.tail->step : s.tail->start;
    if (m1 < 0 || t0 < m1) m1 = t0;
  }
  if (m1 < 0) throw std::invalid_argument("m1 undefined");
  long m2;
  if (s.tail || s.includes_infinity) {
    m2 = kInfCard;
  } else {
    m2 = *s.base.rbegin();
  }
  return {m1, m2};
}

bool decide_continuous(const CardinalitySpec& s) {
  if (!s.contains(0)) throw std::invalid_argument("0 must belong to S");
  if (s.includes_infinity)
    throw std::invalid_argument("infinity not allowed here");
  auto [m1, m2] = minmax(s);
  if (m2 == kInfCard) return true;
  return m2 >= 2 * m1 - 1;
}

char triple_family(TripleClass c) {
  switch (c) {
    case TripleClass::APlus:
    case TripleClass::AMinus:
      return 'A';
    case TripleClass::BPlus:
    case TripleClass::BMinus:
      return 'B';
    default:
      return 'C';
  }
}

std::string triple_class_name(TripleClass c) {
  switch (c) {
    case TripleClass::APlus: return "A+";
    case TripleClass::AMinus: return "A-";
    case TripleClass::BPlus: return "B+";
    case TripleClass::BMinus: return "B-";
    case TripleClass::CPlus: return "C+";
    case TripleClass::CMinus: return "C-";
  }
  return "?";
}

std::vector<TripleClass> admissible_classes(long n, long mid, long end) {
  std::vector<TripleClass> out;
  if (n < 0 || mid < 0 || end < 0) return out;
  long k;
  // A+: (n, n+k, n+2k), k > 0
  k = mid - n;
  if (k > 0 && end == n + 2 * k) out.push_back(TripleClass::APlus);
  // A-: (n, n-k, n-2k), 0 < k <= n/2
  k = n - mid;
  if (k > 0 && 2 * k <= n && end == n - 2 * k) out.push_back(TripleClass::AMinus);
  // B+: (n, n+k, n+2k-1), k >= 0
  k = mid - n;
  if (k >= 0 && end == n + 2 * k - 1) out.push_back(TripleClass::BPlus);
  // B-: (n, n-k, n-2k-1), 0 <= 2k <= n-1
  k = n - mid;
  if (k >= 0 && 2 * k <= n - 1 && end == n - 2 * k - 1)
    out.push_back(TripleClass::BMinus);
  // C+: (n, n+k, n+2k-2), k >= 0
  k = mid - n;
  if (k >= 0 && end == n + 2 * k - 2) out.push_back(TripleClass::CPlus);
  // C-: (n, n-k, n-2k-2), 0 <= k <= n/2 - 1
  k = n - mid;
  if (k >= 0 && 2 * k <= n - 2 && end == n - 2 * k - 2)
    out.push_back(TripleClass::CMinus);
  return out;
}

std::vector<TripleClass> classify_triple(long n, long mid, long end) {
  auto adm = admissible_classes(n, mid, end);
  if (adm.size() <= 1) return adm;
  // Plus and minus parameterizations coincide exactly at k = 0 (mid == n);
  // keep the minus label there so classes stay disjoint as sets of triples.
  std::vector<TripleClass> out;
  for (TripleClass c : adm)
    if (c == TripleClass::AMinus || c == TripleClass::BMinus ||
        c == TripleClass::CMinus)
      out.push_back(c);
  return out.empty() ? std::vector<TripleClass>{adm.front()} : out;
}

bool check_sequence_conditions(const ExtremaSequence& seq,
                               const CardinalitySpec& s, std::string* why) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!s.is_finite() || s.includes_infinity)
    return reject("analytic spectra are finite");
  const auto& x = seq.values;
  if (x.size() < 3 || x.size() % 2 == 0)
    return reject("sequence must have odd length >= 3");
  if (x.front() != 0 || x.back() != 0)
    return reject("sequence must start and end at 0");
  std::set<long> seen;
  for (long v : x) {
    if (v < 0) return reject("negative entry");
    if (!s.contains(v)) return reject("entry outside S");
    seen.insert(v);
  }
  for (long v : s.members_up_to(1L << 30))
    if (!seen.count(v)) return reject("S not covered");
  long b_count = 0, c_count = 0;
  for (size_t i = 0; i + 2 < x.size(); i += 2) {
    auto cls = classify_triple(x[i], x[i + 1], x[i + 2]);
    if (cls.empty()) return reject("triple outside A, B, C");
    char fam = triple_family(cls.front());
    if (fam == 'B') ++b_count;
    if (fam == 'C') ++c_count;
  }
  bool ok = (b_count == 2 && c_count == 0) || (b_count == 0 && c_count == 1);
  if (!ok) return reject("B/C cardinality condition failed");
  return true;
}

namespace {

struct BfsState {
  long current;      // value at the last even position
  uint32_t covered;  // bitmask over the member list
  int b_count;       // capped at 3
  int c_count;       // capped at 2

  bool operator<(const BfsState& o) const {
    return std::tie(current, covered, b_count, c_count) <
           std::tie(o.current, o.covered, o.b_count, o.c_count);
  }
};

struct SearchContext {
  std::vector<long> members;  // all members of S, ascending
  std::map<long, int> index;
};

std::vector<TripleClass> classify_or_empty(long n, long mid, long end) {
  if (mid < 0 || end < 0) return {};
  return classify_triple(n, mid, end);
}

}  // namespace

std::vector<SequenceWitness> enumerate_accepting_sequences(
    const CardinalitySpec& s, size_t limit) {
  if (!s.contains(0)) throw std::invalid_argument("0 must belong to S");
  if (!s.is_finite() || s.includes_infinity)
    throw std::invalid_argument("analytic spectra are finite");

  SearchContext ctx;
  for (long m : s.members_up_to(1L << 30)) {
    ctx.index[m] = static_cast<int>(ctx.members.size());
    ctx.members.push_back(m);
  }
  const uint32_t full = (1u << ctx.members.size()) - 1;

  // Level-synchronised BFS keeping the lexicographically least path per
  // state per depth; states: (current, covered, capped B count, C count).
  struct Node {
    BfsState st;
    std::vector<long> path;  // full sequence so far (odd length)
  };
  std::map<BfsState, std::vector<long>> frontier;
  BfsState init{0, static_cast<uint32_t>(1u << ctx.index.at(0)), 0, 0};
  frontier[init] = {0};

  std::vector<SequenceWitness> found;
  const size_t kMaxLevels = ctx.members.size() * 2 + 8;

  auto emit = [&](const std::vector<long>& path) {
    SequenceWitness w;
    w.sequence.values = path;
    for (size_t i = 0; i + 2 < path.size(); i += 2)
      w.classes.push_back(
          classify_triple(path[i], path[i + 1], path[i + 2]).front());
    found.push_back(std::move(w));
  };

  for (size_t depth = 0; depth < kMaxLevels && found.size() < limit; ++depth) {
    // Accepting states at this depth, in lex order of their paths.
    std::vector<const std::vector<long>*> accepted;
    for (const auto& [st, path] : frontier) {
      if (st.current == 0 && st.covered == full && path.size() >= 3 &&
          ((st.b_count == 2 && st.c_count == 0) ||
           (st.b_count == 0 && st.c_count == 1)))
        accepted.push_back(&path);
    }
    std::sort(accepted.begin(), accepted.end(),
              [](const auto* a, const auto* b) { return *a < *b; });
    for (const auto* p : accepted) {
      if (found.size() >= limit) break;
      emit(*p);
    }
    if (found.size() >= limit) break;

    std::map<BfsState, std::vector<long>> next;
    for (const auto& [st, path] : frontier) {
      if (st.b_count > 2 || st.c_count > 1) continue;
      for (long mid : ctx.members) {
        for (long end : ctx.members) {
          auto cls = classify_or_empty(st.current, mid, end);
          if (cls.empty()) continue;
          char fam = triple_family(cls.front());
          BfsState ns = st;
          ns.current = end;
          ns.covered |= 1u << ctx.index.at(mid);
          ns.covered |= 1u << ctx.index.at(end);
          if (fam == 'B') ns.b_count = std::min(3, ns.b_count + 1);
          if (fam == 'C') ns.c_count = std::min(2, ns.c_count + 1);
          if (ns.b_count > 2 || ns.c_count > 1) continue;
          if (ns.b_count > 0 && ns.c_count > 0) continue;  // condition v
          std::vector<long> npath = path;
          npath.push_back(mid);
          npath.push_back(end);
          auto it = next.find(ns);
          if (it == next.end() || npath < it->second)
            next[ns] = std::move(npath);
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return found;
}

std::optional<SequenceWitness> decide_analytic(const CardinalitySpec& s) {
  auto v = enumerate_accepting_sequences(s, 1);
  if (v.empty()) return std::nullopt;
  // Re-validate; the search is not trusted.
  std::string why;
  if (!check_sequence_conditions(v.front().sequence, s, &why))
    throw std::logic_error("witness failed re-validation: " + why);
  return v.front();
}

std::pair<SequenceWitness, PLFunction> decide_analytic_with_witness(
    const CardinalitySpec& s) {
  const size_t kSequenceBudget = 64;
  auto seqs = enumerate_accepting_sequences(s, kSequenceBudget);
  if (seqs.empty()) throw std::invalid_argument("not analytically realizable");
  for (const auto& w : seqs) {
    PLFunction f;
    try {
      f = build_witness(w.sequence);
    } catch (const std::exception&) {
      continue;  // dead end for this sequence; try the next accepted one
    }
    // Spectrum check against S.
    auto prof = omega_pl(f);
    auto counts = prof.count_set();
    std::set<long> target(s.base.begin(), s.base.end());
    if (counts == target && !prof.has_infinite()) return {w, f};
  }
  throw std::runtime_error("realizable by conditions, no witness found");
}

}  // namespace omegaforge
