#include "omegaforge/sturm.hpp"

#include <algorithm>
#include <stdexcept>

namespace omegaforge {

namespace {

// Negated euclidean remainder, rescaled to a primitive integer polynomial
// with the sign preserved. Rescaling by a positive constant does not change
// the sign pattern the chain is queried for.
RatPoly neg_rem_normalized(const RatPoly& a, const RatPoly& b) {
  RatPoly r = a.divmod(b).second;
  if (r.is_zero()) return r;
  // scale to integer, divide by positive content
  Int l(1);
  for (const Rat& c : r.coeffs())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  Int g(0);
  for (const Rat& c : r.coeffs()) {
    Int n = c.get_num() * (l / c.get_den());
    Int an = abs(n);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), an.get_mpz_t());
  }
  Rat scale = g == 0 ? Rat(1) : Rat(l, g);
  return -(r * scale);
}

}  // namespace

int SturmChain::variations(const Rat& x) const {
  int var = 0, last = 0;
  for (const RatPoly& p : polys) {
    int s = p.eval_sign(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

SturmChain sturm_chain(const RatPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("degenerate input");
  SturmChain chain;
  RatPoly p0 = squarefree(p);
  chain.polys.push_back(p0);
  if (p0.degree() == 0) return chain;
  chain.polys.push_back(p0.derivative());
  while (chain.polys.back().degree() > 0) {
    const RatPoly& a = chain.polys[chain.polys.size() - 2];
    const RatPoly& b = chain.polys.back();
    RatPoly r = neg_rem_normalized(a, b);
    if (r.is_zero()) break;  // cannot happen for squarefree input
    chain.polys.push_back(r);
  }
  return chain;
}

long count_roots(const SturmChain& chain, const Rat& a, const Rat& b) {
  if (!(a < b)) throw std::invalid_argument("empty interval");
  return chain.variations(a) - chain.variations(b);
}

long count_roots(const RatPoly& p, const Rat& a, const Rat& b) {
  return count_roots(sturm_chain(p), a, b);
}

IsolInterval refine_interval(const RatPoly& sf, IsolInterval iv,
                             const Rat& width) {
  if (iv.is_point()) return iv;
  int slo = sf.eval_sign(iv.lo);
  while (iv.hi - iv.lo > width) {
    Rat mid = iv.midpoint();
    int sm = sf.eval_sign(mid);
    if (sm == 0) {
      iv.lo = iv.hi = mid;
      return iv;
    }
    if (sm == slo) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }
  return iv;
}

std::vector<IsolInterval> isolate_roots(const RatPoly& p, const Rat& a,
                                        const Rat& b) {
  if (p.is_zero()) throw std::invalid_argument("degenerate input");
  if (!(a < b)) throw std::invalid_argument("empty interval");
  RatPoly sf = squarefree(p);
  if (sf.degree() == 0) return {};
  SturmChain chain = sturm_chain(p);

  std::vector<IsolInterval> out;
  // Exact root at the left endpoint first; (a, b] counting misses it.
  if (sf.eval_sign(a) == 0) out.push_back({a, a, 1});

  // Bisect (lo, hi] segments until each holds one root.
  struct Seg {
    Rat lo, hi;
    long n;
  };
  std::vector<Seg> stack;
  long total = count_roots(chain, a, b);
  if (total > 0) stack.push_back({a, b, total});
  std::vector<IsolInterval> found;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.n == 1) {
      if (sf.eval_sign(s.hi) == 0) {
        found.push_back({s.hi, s.hi, 1});
        continue;
      }
      // The root lies in (lo, hi]. If lo itself is a different root of p
      // (reported separately), shrink until lo moves strictly past it.
      while (sf.eval_sign(s.lo) == 0) {
        Rat mid = (s.lo + s.hi) / 2;
        if (sf.eval_sign(mid) == 0) {
          s.lo = s.hi = mid;
          break;
        }
        if (count_roots(chain, mid, s.hi) == 1) {
          s.lo = mid;
        } else {
          s.hi = mid;
        }
      }
      // a few dyadic refinement steps catch exact midpoint roots
      IsolInterval iv{s.lo, s.hi, 1};
      iv = refine_interval(sf, iv, (s.hi - s.lo) / 64);
      found.push_back(iv);
      continue;
    }
    Rat mid = (s.lo + s.hi) / 2;
    long left = count_roots(chain, s.lo, mid);
    long right = s.n - left;
    // push right first so results come out in ascending order
    if (right > 0) stack.push_back({mid, s.hi, right});
    if (left > 0) stack.push_back({s.lo, mid, left});
  }
  for (auto& iv : found) out.push_back(iv);

  // Refine to pairwise disjoint intervals; roots are distinct so shrinking
  // widths separate them.
  Rat width = b - a;
  for (;;) {
    bool ok = true;
    for (size_t i = 0; i + 1 < out.size(); ++i)
      if (out[i].hi >= out[i + 1].lo) ok = false;
    if (ok) break;
    width /= 4;
    for (auto& iv : out) iv = refine_interval(sf, iv, width);
  }

  // Multiplicities from the squarefree decomposition.
  auto decomp = squarefree_decomposition(p);
  if (decomp.size() > 1 || (decomp.size() == 1 && decomp[0].second > 1)) {
    for (auto& iv : out) {
      for (const auto& [factor, mult] : decomp) {
        if (iv.is_point()) {
          if (factor.eval_sign(iv.lo) == 0) {
            iv.multiplicity = mult;
            break;
          }
        } else {
          SturmChain fc = sturm_chain(factor);
          if (count_roots(fc, iv.lo, iv.hi) > 0 ||
              factor.eval_sign(iv.lo) == 0) {
            iv.multiplicity = mult;
            break;
          }
        }
      }
    }
  }
  return out;
}

RatPoly critical_level_poly(const RatPoly& p) {
  if (p.degree() <= 1) throw std::invalid_argument("no critical points");
  RatPoly dp = p.derivative();
  // Res_x(p(x) - y, p'(x)) as a polynomial in y, degree exactly deg(p') in y
  // since Res = lc(p')^deg(p) * prod over p' roots of (p(theta) - y).
  // Computed by evaluation at deg(p')+1 rational points and interpolation.
  int dy = dp.degree();
  std::vector<std::pair<Rat, Rat>> samples;
  samples.reserve(dy + 1);
  for (int i = 0; i <= dy; ++i) {
    Rat y(i);
    RatPoly shifted = p - RatPoly::constant(y);
    samples.emplace_back(y, resultant(shifted, dp));
  }
  RatPoly clp = lagrange_interpolate(samples);
  if (clp.is_zero()) throw std::logic_error("eliminant vanished");
  return clp;
}

}  // namespace omegaforge
