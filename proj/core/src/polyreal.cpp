#include "omegaforge/polyreal.hpp"

#include "omegaforge/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace omegaforge {

namespace {

// Level under construction: an exact rational or an isolating box of the
// squarefree critical-level polynomial.
struct RawLevel {
  LevelValue v;
  int endpoint_hits = 0;
  bool operator<(const RawLevel& o) const {
    Rat a = v.exact ? v.value : v.box.lo;
    Rat b = o.v.exact ? o.v.value : o.v.box.lo;
    return a < b;
  }
};

Rat level_lo(const LevelValue& v) { return v.exact ? v.value : v.box.lo; }
Rat level_hi(const LevelValue& v) { return v.exact ? v.value : v.box.hi; }

}  // namespace

LevelStructure restrict_critical_levels(const RatPoly& p) {
  if (p.degree() < 2) throw std::invalid_argument("no critical points");
  RatPoly dp = p.derivative();
  RatPoly dp_sf = squarefree(dp);

  std::vector<IsolInterval> crits = isolate_roots(dp, Rat(0), Rat(1));

  RatPoly clp = critical_level_poly(p);
  RatPoly clp_sf = squarefree(clp);
  Rat bound = root_bound(clp_sf);
  std::vector<IsolInterval> clp_roots;
  if (clp_sf.degree() >= 1)
    clp_roots = isolate_roots(clp_sf, -bound, bound);

  std::vector<RawLevel> levels;
  auto add_exact = [&](const Rat& value, int eh) {
    for (RawLevel& l : levels)
      if (l.v.exact && l.v.value == value) {
        l.endpoint_hits += eh;
        return;
      }
    RawLevel l;
    l.v.exact = true;
    l.v.value = value;
    l.endpoint_hits = eh;
    levels.push_back(l);
  };

  // critical points with rational abscissae give exact levels; the rest are
  // boxed through the critical-level polynomial
  std::vector<size_t> used_clp;  // indices of clp roots hit
  for (const IsolInterval& c : crits) {
    if (c.is_point()) {
      add_exact(p.eval(c.lo), 0);
      continue;
    }
    // refine the critical point until its value enclosure meets exactly one
    // clp root box
    IsolInterval cp = c;
    size_t match = clp_roots.size();
    Rat width = cp.hi - cp.lo;
    for (int round = 0; round < 256; ++round) {
      auto [vlo, vhi] = p.eval_interval(cp.lo, cp.hi);
      size_t hits = 0, which = clp_roots.size();
      for (size_t i = 0; i < clp_roots.size(); ++i) {
        const IsolInterval& rb = clp_roots[i];
        if (!(vhi < rb.lo || rb.hi < vlo)) {
          ++hits;
          which = i;
        }
      }
      if (hits == 1) {
        // value box may still poke outside the root box; shrink the root box
        // until it certainly isolates this level from its neighbours
        match = which;
        break;
      }
      width /= 4;
      cp = refine_interval(dp_sf, cp, width);
      for (auto& rb : clp_roots) rb = refine_interval(clp_sf, rb, width);
      if (cp.is_point()) break;
    }
    if (cp.is_point()) {
      add_exact(p.eval(cp.lo), 0);
      continue;
    }
    if (match == clp_roots.size())
      throw std::logic_error("critical value isolation failed");
    if (clp_roots[match].is_point()) {
      add_exact(clp_roots[match].lo, 0);
    } else {
      used_clp.push_back(match);
    }
  }
  std::sort(used_clp.begin(), used_clp.end());
  used_clp.erase(std::unique(used_clp.begin(), used_clp.end()), used_clp.end());

  // endpoint values: exact coincidence with a critical level is decided by
  // sign evaluation of the critical-level polynomial at the rational value
  for (const Rat& e : {p.eval(Rat(0)), p.eval(Rat(1))}) {
    bool merged = false;
    if (clp_sf.degree() >= 1 && clp_sf.eval_sign(e) == 0) {
      // e is a critical value; if one of the used boxes holds it, the level
      // is exactly e
      for (size_t idx : used_clp) {
        if (clp_roots[idx].lo <= e && e <= clp_roots[idx].hi) {
          add_exact(e, 1);
          used_clp.erase(std::remove(used_clp.begin(), used_clp.end(), idx),
                         used_clp.end());
          merged = true;
          break;
        }
      }
    }
    if (!merged) add_exact(e, 1);
  }

  // exclude exact values from remaining boxes, then refine to disjointness
  std::vector<Rat> exacts;
  for (const RawLevel& l : levels)
    if (l.v.exact) exacts.push_back(l.v.value);
  for (size_t idx : used_clp) {
    IsolInterval& rb = clp_roots[idx];
    Rat width = rb.hi - rb.lo;
    bool again = true;
    while (again && !rb.is_point()) {
      again = false;
      for (const Rat& e : exacts)
        if (rb.lo <= e && e <= rb.hi) again = true;
      if (again) {
        width /= 4;
        rb = refine_interval(clp_sf, rb, width);
      }
    }
    RawLevel l;
    l.v.exact = false;
    l.v.box = rb;
    levels.push_back(l);
  }

  // pairwise disjoint boxes
  for (;;) {
    std::sort(levels.begin(), levels.end());
    bool ok = true;
    for (size_t i = 0; i + 1 < levels.size(); ++i) {
      if (!(level_hi(levels[i].v) < level_lo(levels[i + 1].v))) {
        ok = false;
        for (RawLevel& l : {std::ref(levels[i]), std::ref(levels[i + 1])}) {
          if (!l.v.exact && !l.v.box.is_point()) {
            l.v.box = refine_interval(clp_sf, l.v.box,
                                      (l.v.box.hi - l.v.box.lo) / 4);
            if (l.v.box.is_point()) {
              l.v.exact = true;
              l.v.value = l.v.box.lo;
            }
          }
        }
      }
    }
    if (ok) break;
  }

  LevelStructure out;
  for (const RawLevel& l : levels) {
    LevelEntry e;
    e.value = l.v;
    e.endpoint_hits = l.endpoint_hits;
    out.levels.push_back(e);
  }
  return out;
}

OmegaProfile omega_poly(const RatPoly& p) {
  OmegaProfile prof;
  if (p.degree() <= 0) {
    // constant: one plateau level
    LevelEntry e;
    e.value.exact = true;
    e.value.value = p.coeff(0);
    e.count = kInfCard;
    e.endpoint_hits = 2;
    prof.levels.push_back(e);
    prof.bands = {0, 0};
    return prof;
  }

  LevelStructure ls;
  if (p.degree() == 1) {
    LevelEntry a, b;
    a.value.exact = true;
    a.value.value = p.eval(Rat(0));
    a.endpoint_hits = 1;
    b.value.exact = true;
    b.value.value = p.eval(Rat(1));
    b.endpoint_hits = 1;
    if (b.value.value < a.value.value) std::swap(a, b);
    ls.levels = {a, b};
  } else {
    ls = restrict_critical_levels(p);
  }

  const auto& lv = ls.levels;
  // band samples strictly between adjacent level enclosures
  std::vector<Rat> samples;
  samples.push_back(level_lo(lv.front().value) - 1);
  for (size_t i = 0; i + 1 < lv.size(); ++i)
    samples.push_back((level_hi(lv[i].value) + level_lo(lv[i + 1].value)) / 2);
  samples.push_back(level_hi(lv.back().value) + 1);

  prof.bands.resize(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    RatPoly q = p - RatPoly::constant(samples[i]);
    long n = q.is_zero() ? kInfCard : count_roots(q, Rat(0), Rat(1));
    if (n == kInfCard) throw std::logic_error("unexpected plateau");
    if (q.eval_sign(Rat(0)) == 0) ++n;
    prof.bands[i] = n;
  }
  if (prof.bands.front() != 0 || prof.bands.back() != 0)
    throw std::logic_error("outer band not empty");

  for (size_t i = 0; i < lv.size(); ++i) {
    LevelEntry e = lv[i];
    long below = prof.bands[i], above = prof.bands[i + 1];
    long num = below + above + e.endpoint_hits;
    if (num % 2 != 0) throw std::logic_error("level parity violation");
    e.count = num / 2;
    prof.levels.push_back(e);
  }
  return prof;
}

RatPoly hermite_fit(const std::vector<HermiteNode>& nodes) {
  for (size_t i = 0; i < nodes.size(); ++i)
    for (size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i].x == nodes[j].x)
        throw std::invalid_argument("node collision");
  size_t m = nodes.size();
  for (const auto& n : nodes)
    if (n.flat) ++m;
  // solve for degree m-1 coefficients
  std::vector<std::vector<Rat>> A(m, std::vector<Rat>(m + 1, Rat(0)));
  size_t row = 0;
  for (const auto& n : nodes) {
    Rat pw(1);
    for (size_t j = 0; j < m; ++j) {
      A[row][j] = pw;
      pw *= n.x;
    }
    A[row][m] = n.value;
    ++row;
    if (n.flat) {
      Rat pw2(1);
      A[row][0] = Rat(0);
      for (size_t j = 1; j < m; ++j) {
        A[row][j] = Rat(static_cast<long>(j)) * pw2;
        pw2 *= n.x;
      }
      A[row][m] = Rat(0);
      ++row;
    }
  }
  // gaussian elimination
  for (size_t col = 0; col < m; ++col) {
    size_t piv = col;
    while (piv < m && A[piv][col] == 0) ++piv;
    if (piv == m) throw std::logic_error("singular interpolation system");
    std::swap(A[piv], A[col]);
    for (size_t r = 0; r < m; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rat f = A[r][col] / A[col][col];
      for (size_t c2 = col; c2 <= m; ++c2) A[r][c2] -= f * A[col][c2];
    }
  }
  std::vector<Rat> coeffs(m);
  for (size_t i = 0; i < m; ++i) coeffs[i] = A[i][m] / A[i][i];
  return RatPoly(std::move(coeffs));
}

namespace {

// ---- numeric stage of realize_poly -----------------------------------

// Witness shape: endpoint values and x-ordered interior extrema.
struct WitnessShape {
  double f0, f1;
  std::vector<std::pair<double, double>> extrema;  // (x, value)
  std::vector<long> level_multiplicity;            // extrema per level value
  bool all_distinct = true;
  bool palindromic = false;
};

WitnessShape shape_of(const PLFunction& f) {
  WitnessShape w;
  w.f0 = rat_double(f.value_at_lo());
  w.f1 = rat_double(f.value_at_hi());
  const auto& bp = f.breakpoints;
  std::vector<Rat> vals;
  for (size_t i = 1; i + 1 < bp.size(); ++i) {
    const Rat& prev = bp[i - 1].second;
    const Rat& cur = bp[i].second;
    const Rat& next = bp[i + 1].second;
    bool mx = prev < cur && next < cur;
    bool mn = prev > cur && next > cur;
    if (mx || mn) {
      w.extrema.emplace_back(rat_double(bp[i].first), rat_double(bp[i].second));
      vals.push_back(cur);
    }
  }
  // distinct critical levels: no two extrema share a value, and no extremum
  // sits at an endpoint value
  std::set<Rat> seen;
  for (const Rat& v : vals) {
    if (seen.count(v)) w.all_distinct = false;
    seen.insert(v);
  }
  if (seen.count(f.value_at_lo()) || seen.count(f.value_at_hi()))
    w.all_distinct = false;
  // palindrome of the full value word including endpoints
  std::vector<Rat> word;
  word.push_back(f.value_at_lo());
  for (const Rat& v : vals) word.push_back(v);
  word.push_back(f.value_at_hi());
  std::vector<Rat> rev(word.rbegin(), word.rend());
  w.palindromic = word == rev;
  return w;
}

// p(x) = C * Integral prod(x - a_i) + D evaluated in doubles.
std::vector<double> poly_from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> d(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      d[i + 1] += c[i];
      d[i] -= r * c[i];
    }
    c = std::move(d);
  }
  return c;
}

std::vector<double> integrate(const std::vector<double>& c) {
  std::vector<double> d(c.size() + 1, 0.0);
  for (size_t i = 0; i < c.size(); ++i) d[i + 1] = c[i] / (i + 1);
  return d;
}

double eval_coeffs(const std::vector<double>& c, double x) {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool solve_linear(std::vector<std::vector<double>>& A, std::vector<double>& b) {
  size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
    if (std::fabs(A[piv][col]) < 1e-14) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = A[r][col] / A[col][col];
      for (size_t c2 = col; c2 < n; ++c2) A[r][c2] -= f * A[col][c2];
      b[r] -= f * b[col];
    }
  }
  for (size_t i = 0; i < n; ++i) b[i] /= A[i][i];
  return true;
}

// Newton iteration on a generic residual function.
template <typename F>
bool newton_solve(std::vector<double>& u, F&& residual, int iters,
                  double* out_err) {
  size_t n = u.size();
  for (int it = 0; it < iters; ++it) {
    std::vector<double> r = residual(u);
    double err = 0;
    for (double v : r) err = std::max(err, std::fabs(v));
    if (out_err) *out_err = err;
    if (err < 1e-12) return true;
    std::vector<std::vector<double>> J(n, std::vector<double>(n, 0.0));
    for (size_t j = 0; j < n; ++j) {
      double h = 1e-7 * (1 + std::fabs(u[j]));
      std::vector<double> up = u;
      up[j] += h;
      std::vector<double> rp = residual(up);
      for (size_t i = 0; i < n; ++i) J[i][j] = (rp[i] - r[i]) / h;
    }
    std::vector<double> step = r;
    if (!solve_linear(J, step)) return false;
    double scale = 1.0;
    for (int damp = 0; damp < 6; ++damp) {
      std::vector<double> cand = u;
      for (size_t i = 0; i < n; ++i) cand[i] -= scale * step[i];
      std::vector<double> rc = residual(cand);
      double errc = 0;
      for (double v : rc) errc = std::max(errc, std::fabs(v));
      if (errc < err || damp == 5) {
        u = std::move(cand);
        break;
      }
      scale /= 2;
    }
  }
  std::vector<double> r = residual(u);
  double err = 0;
  for (double v : r) err = std::max(err, std::fabs(v));
  if (out_err) *out_err = err;
  return err < 1e-9;
}

const Int kDenBound("1000000000000");  // 10^12 rationalization bound

// Exact polynomial from rationalized derivative roots and endpoint data.
RatPoly assemble_from_roots(const std::vector<Rat>& roots, const Rat& v0,
                            const Rat& v1) {
  RatPoly prod = RatPoly::constant(Rat(1));
  for (const Rat& r : roots) prod = prod * RatPoly::linear_root(r);
  RatPoly P = prod.integral();
  Rat I = P.eval(Rat(1));
  if (I == 0) throw std::logic_error("degenerate integral");
  Rat C = (v1 - v0) / I;
  return P * C + RatPoly::constant(v0);
}

std::set<long> poly_count_set(const RatPoly& p) {
  auto prof = omega_poly(p);
  return prof.count_set();
}

// Unverified candidates can carry coefficients whose exact analysis would
// be disproportionate; only report their spectrum when it stays cheap.
bool spectrum_affordable(const RatPoly& p) {
  size_t bits = 0;
  for (const Rat& c : p.coeffs())
    bits += mpz_sizeinbase(c.get_num_mpz_t(), 2) +
            mpz_sizeinbase(c.get_den_mpz_t(), 2);
  return bits <= 2048;
}

struct Attempt {
  bool ok = false;
  RatPoly poly;
  double residual = 0;
  std::string note;
};

// Distinct-level route: derivative roots free, Newton matches the witness
// levels, rationalization preserves the level order.
Attempt attempt_distinct(const WitnessShape& w, const std::set<long>& target) {
  Attempt out;
  size_t E = w.extrema.size();
  if (E == 0) {
    out.poly = RatPoly::x();
    out.residual = 0;
    out.ok = poly_count_set(out.poly) == target;
    return out;
  }
  // unknowns: E roots; C and D eliminated through the endpoint conditions
  std::vector<double> u;
  for (auto& [x, v] : w.extrema) u.push_back(x);
  auto residual = [&](const std::vector<double>& a) {
    std::vector<double> P = integrate(poly_from_roots(a));
    double I = eval_coeffs(P, 1.0);
    double C = std::fabs(I) < 1e-15 ? 1.0 : (w.f1 - w.f0) / I;
    std::vector<double> r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
      r[i] = w.f0 + C * eval_coeffs(P, a[i]) - w.extrema[i].second;
    return r;
  };
  double err = 0;
  bool conv = newton_solve(u, residual, 120, &err);
  out.residual = err;
  out.note = conv ? "newton converged" : "newton stalled";
  std::vector<Rat> roots;
  for (double a : u) roots.push_back(rationalize(a, kDenBound));
  // the spectrum only survives rationalization when the root layout holds;
  // repair mild damage so an unverified candidate still carries residuals
  std::sort(roots.begin(), roots.end());
  bool repaired = false;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (roots[i] <= 0) {
      roots[i] = make_rat(1, 1000 + static_cast<long>(i));
      repaired = true;
    }
    if (roots[i] >= 1) {
      roots[i] = Rat(1) - make_rat(1, 1000 + static_cast<long>(i));
      repaired = true;
    }
    if (i > 0 && !(roots[i - 1] < roots[i])) {
      roots[i] = roots[i - 1] + make_rat(1, 100000);
      repaired = true;
    }
  }
  if (repaired) out.note += "; root layout repaired";
  Rat v0 = rationalize(w.f0, kDenBound), v1 = rationalize(w.f1, kDenBound);
  try {
    out.poly = assemble_from_roots(roots, v0, v1);
    // exact verification is only worth its cost when the numeric stage
    // landed and the layout survived untouched
    if (conv && !repaired)
      out.ok = poly_count_set(out.poly) == target;
  } catch (const std::exception&) {
    out.ok = false;
  }
  return out;
}

// Symmetric route: derivative roots mirror-paired around the midpoint, so
// paired extrema share their level exactly after rationalization. Palindromic
// witnesses always carry an odd extrema count with a middle extremum.
Attempt attempt_symmetric(const WitnessShape& w, const std::set<long>& target) {
  Attempt out;
  size_t E = w.extrema.size();
  if (E == 0 || E % 2 == 0 || !w.palindromic) return out;
  size_t npairs = E / 2;
  // q'(t) = C * t * prod (t^2 - t_j^2) on [-1, 1], p(x) = q(2x - 1);
  // unknowns: t_j, C, D; constraints: pair levels, middle level, endpoint
  std::vector<double> u;
  for (size_t j = 0; j < npairs; ++j) {
    double tl = std::fabs(1.0 - 2.0 * w.extrema[j].first);
    double tr = std::fabs(1.0 - 2.0 * w.extrema[E - 1 - j].first);
    u.push_back(std::max(0.05, (tl + tr) / 2));
  }
  u.push_back(1.0);                          // C
  u.push_back(w.extrema[npairs].second);     // D = middle level first guess
  auto qcoeffs = [&](const std::vector<double>& v) {
    std::vector<double> c{1.0};
    for (size_t j = 0; j < npairs; ++j) {
      double beta = v[j] * v[j];
      std::vector<double> d(c.size() + 2, 0.0);
      for (size_t i = 0; i < c.size(); ++i) {
        d[i + 2] += c[i];
        d[i] -= beta * c[i];
      }
      c = std::move(d);
    }
    c.insert(c.begin(), 0.0);  // the middle extremum root at t = 0
    return integrate(c);
  };
  auto residual = [&](const std::vector<double>& v) {
    std::vector<double> Q = qcoeffs(v);
    double C = v[npairs], D = v[npairs + 1];
    std::vector<double> r;
    for (size_t j = 0; j < npairs; ++j)
      r.push_back(D + C * eval_coeffs(Q, v[j]) - w.extrema[j].second);
    r.push_back(D + C * eval_coeffs(Q, 0.0) - w.extrema[npairs].second);
    r.push_back(D + C * eval_coeffs(Q, 1.0) - w.f1);
    return r;
  };
  double err = 0;
  bool conv = newton_solve(u, residual, 150, &err);
  out.residual = err;
  out.note = conv ? "symmetric newton converged" : "symmetric newton stalled";
  if (!conv) return out;
  std::vector<Rat> ts;
  for (size_t j = 0; j < npairs; ++j) {
    if (!(u[j] > 0) || !(u[j] < 1)) return out;
    ts.push_back(rationalize(u[j], kDenBound));
  }
  Rat C = rationalize(u[npairs], kDenBound);
  Rat D = rationalize(u[npairs + 1], kDenBound);
  if (C == 0) return out;
  RatPoly qp = RatPoly::constant(C);
  for (const Rat& t : ts)
    qp = qp * RatPoly({-(t * t), Rat(0), Rat(1)});
  qp = qp * RatPoly::x();
  RatPoly q = qp.integral() + RatPoly::constant(D);
  out.poly = q.compose_affine(Rat(2), Rat(-1));
  try {
    out.ok = poly_count_set(out.poly) == target;
  } catch (const std::exception&) {
    out.ok = false;
  }
  return out;
}

PolyWitness realize_from_sequences(const CardinalitySpec& target,
                                   const std::vector<SequenceWitness>& seqs) {
  PolyWitness best;
  best.target = target;
  best.report.exact = false;
  best.report.note = "no candidate";
  std::set<long> want(target.base.begin(), target.base.end());

  size_t scanned = 0;
  for (const auto& sw : seqs) {
    // exact hits surface early; once a candidate with residuals exists the
    // remaining sequences rarely change the outcome
    if (++scanned > 16 && !best.poly.is_zero()) break;
    PLFunction f;
    try {
      f = build_witness(sw.sequence);
    } catch (const std::exception&) {
      continue;
    }
    WitnessShape w = shape_of(f);

    std::vector<Attempt> tries;
    if (w.palindromic) tries.push_back(attempt_symmetric(w, want));
    tries.push_back(attempt_distinct(w, want));

    for (Attempt& at : tries) {
      if (at.poly.is_zero()) continue;
      if (at.ok) {
        PolyWitness pw;
        pw.poly = at.poly;
        pw.target = target;
        pw.report.exact = true;
        pw.report.computed_spectrum = poly_count_set(at.poly);
        pw.report.max_residual = at.residual;
        pw.report.note = at.note;
        return pw;
      }
      if (!best.report.exact &&
          (best.poly.is_zero() || at.residual < best.report.max_residual)) {
        best.poly = at.poly;
        best.report.exact = false;
        best.report.computed_spectrum.clear();
        if (spectrum_affordable(at.poly)) {
          try {
            best.report.computed_spectrum = poly_count_set(at.poly);
          } catch (const std::exception&) {
            best.report.computed_spectrum.clear();
          }
        }
        best.report.max_residual = at.residual;
        best.report.note = at.note + "; not exact after rationalization";
      }
    }
  }
  return best;
}

}  // namespace

PolyWitness realize_poly(const CardinalitySpec& target) {
  auto seqs = enumerate_accepting_sequences(target, 64);
  if (seqs.empty()) throw std::invalid_argument("not analytically realizable");
  return realize_from_sequences(target, seqs);
}

PolyWitness realize_poly(const ExtremaSequence& seq) {
  CardinalitySpec target;
  for (long v : seq.values) target.base.insert(v);
  std::string why;
  if (!check_sequence_conditions(seq, target, &why))
    throw std::invalid_argument("not analytically realizable");
  SequenceWitness sw;
  sw.sequence = seq;
  std::vector<SequenceWitness> seqs{sw};
  auto more = enumerate_accepting_sequences(target, 63);
  seqs.insert(seqs.end(), more.begin(), more.end());
  return realize_from_sequences(target, seqs);
}

}  // namespace omegaforge
