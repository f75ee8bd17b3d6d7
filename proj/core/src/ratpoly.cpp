#include "omegaforge/ratpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace omegaforge {

RatPoly RatPoly::from_longs(const std::vector<long>& v) {
  std::vector<Rat> c;
  c.reserve(v.size());
  for (long x : v) c.emplace_back(x);
  return RatPoly(std::move(c));
}

Rat RatPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RatPoly::eval_double(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * x + rat_double(*it);
  return acc;
}

std::pair<Rat, Rat> RatPoly::eval_interval(const Rat& lo, const Rat& hi) const {
  Rat a(0), b(0);  // running enclosure [a, b]
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    // [a,b] * [lo,hi] + coeff
    Rat p1 = a * lo, p2 = a * hi, p3 = b * lo, p4 = b * hi;
    Rat mn = std::min(std::min(p1, p2), std::min(p3, p4));
    Rat mx = std::max(std::max(p1, p2), std::max(p3, p4));
    a = mn + *it;
    b = mx + *it;
  }
  return {a, b};
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return RatPoly();
  std::vector<Rat> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return RatPoly(std::move(d));
}

RatPoly RatPoly::integral() const {
  if (c_.empty()) return RatPoly();
  std::vector<Rat> d(c_.size() + 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    d[i + 1] = c_[i] / Rat(static_cast<long>(i + 1));
  return RatPoly(std::move(d));
}

RatPoly RatPoly::operator-() const {
  std::vector<Rat> d(c_);
  for (auto& q : d) q = -q;
  return RatPoly(std::move(d));
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rat> d(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) d[i] += o.c_[i];
  return RatPoly(std::move(d));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (-o); }

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return RatPoly();
  std::vector<Rat> d(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) d[i + j] += c_[i] * o.c_[j];
  return RatPoly(std::move(d));
}

RatPoly RatPoly::operator*(const Rat& s) const {
  if (s == 0) return RatPoly();
  std::vector<Rat> d(c_);
  for (auto& q : d) q *= s;
  return RatPoly(std::move(d));
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& d) const {
  if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
  RatPoly r = *this;
  std::vector<Rat> q(
      std::max<int>(0, degree() - d.degree() + 1), Rat(0));
  while (!r.is_zero() && r.degree() >= d.degree()) {
    Rat f = r.leading() / d.leading();
    int k = r.degree() - d.degree();
    q[k] = f;
    // r -= f * x^k * d
    std::vector<Rat> rc = r.c_;
    for (size_t i = 0; i < d.c_.size(); ++i) rc[i + k] -= f * d.c_[i];
    r = RatPoly(std::move(rc));
  }
  return {RatPoly(std::move(q)), r};
}

RatPoly RatPoly::compose_affine(const Rat& a, const Rat& b) const {
  // Horner in (a*x + b)
  RatPoly arg({b, a});
  RatPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * arg + RatPoly::constant(*it);
  return acc;
}

std::string RatPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& q = c_[i];
    if (q == 0) continue;
    if (!first) os << (q > 0 ? " + " : " - ");
    else if (q < 0) os << "-";
    Rat aq = rat_abs(q);
    if (i == 0 || aq != 1) os << rat_str(aq);
    if (i > 0) {
      if (aq != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

namespace {

// Integer polynomial support for PRS computations, lowest degree first.
using ZPoly = std::vector<Int>;

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

Int zcontent(const ZPoly& p) {
  Int g(0);
  for (const Int& c : p) {
    Int a = abs(c);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g;
}

ZPoly zdiv_const(const ZPoly& p, const Int& d) {
  ZPoly r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = p[i] / d;
  return r;
}

Int zpow(const Int& b, long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

// Clears denominators and content; {primitive integer poly, positive scale}
// such that primitive = p * scale (up to the returned sign).
ZPoly to_primitive(const RatPoly& p) {
  Int l(1);
  for (const Rat& c : p.coeffs())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z(p.coeffs().size());
  for (size_t i = 0; i < z.size(); ++i) {
    Rat s = p.coeffs()[i] * Rat(l);
    z[i] = s.get_num();
  }
  Int g = zcontent(z);
  if (g > 1) z = zdiv_const(z, g);
  return z;
}

RatPoly from_zpoly(const ZPoly& z) {
  std::vector<Rat> c(z.size());
  for (size_t i = 0; i < z.size(); ++i) c[i] = Rat(z[i]);
  return RatPoly(std::move(c));
}

// Pseudo-remainder: rem(lc(b)^(deg a - deg b + 1) * a, b), exact over Z.
// Each reduction step contributes one factor of lc(b); when the degree drops
// by more than one the missing powers are applied at the end so the result
// carries exactly lc(b)^(delta+1).
ZPoly zprem(ZPoly a, const ZPoly& b) {
  int db = zdeg(b);
  const Int& lb = b.back();
  long want = zdeg(a) - db + 1;
  long steps = 0;
  while (!a.empty() && zdeg(a) >= db) {
    int k = zdeg(a) - db;
    Int la = a.back();
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[i + k] -= la * b[i];
    ztrim(a);
    ++steps;
  }
  if (!a.empty() && steps < want) {
    Int f = zpow(lb, want - steps);
    for (auto& c : a) c *= f;
  }
  return a;
}

ZPoly zprimitive_part(ZPoly p) {
  ztrim(p);
  if (p.empty()) return p;
  Int g = zcontent(p);
  if (p.back() < 0) g = -g;
  return zdiv_const(p, g);
}

ZPoly zgcd(ZPoly a, ZPoly b) {
  a = zprimitive_part(std::move(a));
  b = zprimitive_part(std::move(b));
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (zdeg(a) < zdeg(b)) std::swap(a, b);
  while (!b.empty()) {
    ZPoly r = zprimitive_part(zprem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Resultant of primitive integer polynomials via the subresultant PRS
// (Cohen, "A Course in Computational Algebraic Number Theory", alg. 3.3.7).
Int zresultant(ZPoly a, ZPoly b) {
  ztrim(a);
  ztrim(b);
  if (a.empty() || b.empty()) return Int(0);
  int s = 1;
  if (zdeg(a) < zdeg(b)) {
    if ((zdeg(a) & 1) && (zdeg(b) & 1)) s = -s;
    std::swap(a, b);
  }
  Int g(1), h(1);
  while (zdeg(b) > 0) {
    long delta = zdeg(a) - zdeg(b);
    if ((zdeg(a) & 1) && (zdeg(b) & 1)) s = -s;
    ZPoly r = zprem(a, b);
    a = std::move(b);
    Int divisor = g * zpow(h, delta);
    b = r.empty() ? ZPoly{} : zdiv_const(r, divisor);
    g = a.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      // h = g^delta / h^(delta-1), exact
      h = zpow(g, delta) / zpow(h, delta - 1);
    }
    if (b.empty()) return Int(0);
  }
  // deg b == 0
  Int res;
  long da = zdeg(a);
  if (da == 0) {
    res = 1;  // both constants; primitive inputs make this degenerate
  } else {
    // res = b0^da / h^(da-1)
    res = zpow(b[0], da) / zpow(h, da - 1);
  }
  return s > 0 ? res : Int(-res);
}

}  // namespace

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() && b.is_zero()) return RatPoly();
  if (a.is_zero()) return b * (Rat(1) / b.leading());
  if (b.is_zero()) return a * (Rat(1) / a.leading());
  ZPoly g = zgcd(to_primitive(a), to_primitive(b));
  RatPoly r = from_zpoly(g);
  return r * (Rat(1) / r.leading());
}

RatPoly squarefree(const RatPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("degenerate input");
  if (p.degree() == 0) return RatPoly::constant(Rat(1));
  RatPoly g = poly_gcd(p, p.derivative());
  RatPoly q = p.divmod(g).first;
  return q * (Rat(1) / q.leading());
}

std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("degenerate input");
  std::vector<std::pair<RatPoly, int>> out;
  if (p.degree() == 0) return out;
  // Yun's algorithm.
  RatPoly d = p.derivative();
  RatPoly g = poly_gcd(p, d);
  RatPoly w = p.divmod(g).first;
  RatPoly y = d.divmod(g).first;
  RatPoly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    RatPoly h = poly_gcd(w, z);
    if (h.degree() > 0) out.emplace_back(h, i);
    w = w.divmod(h).first;
    y = z.divmod(h).first;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

Rat resultant(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero())
    throw std::invalid_argument("degenerate input");
  if (a.degree() == 0 && b.degree() == 0) return Rat(1);
  if (a.degree() == 0) {
    Rat r(1);
    for (int i = 0; i < b.degree(); ++i) r *= a.coeff(0);
    return r;
  }
  if (b.degree() == 0) {
    Rat r(1);
    for (int i = 0; i < a.degree(); ++i) r *= b.coeff(0);
    return r;
  }
  // Res(ca*A, cb*B) = ca^deg(B) cb^deg(A) Res(A, B) for the scalings that
  // turn a, b into their primitive integer images.
  ZPoly za = to_primitive(a), zb = to_primitive(b);
  Int zr = zresultant(za, zb);
  // scale of a: a = (sign) za / sa with sa = za_lead / a_lead as rationals.
  Rat sa = Rat(za.back()) / a.leading();
  Rat sb = Rat(zb.back()) / b.leading();
  Rat corr(1);
  for (int i = 0; i < b.degree(); ++i) corr /= sa;
  for (int i = 0; i < a.degree(); ++i) corr /= sb;
  return Rat(zr) * corr;
}

RatPoly lagrange_interpolate(const std::vector<std::pair<Rat, Rat>>& pts) {
  RatPoly acc;
  for (size_t i = 0; i < pts.size(); ++i) {
    RatPoly basis = RatPoly::constant(Rat(1));
    Rat denom(1);
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      basis = basis * RatPoly::linear_root(pts[j].first);
      denom *= pts[i].first - pts[j].first;
    }
    acc = acc + basis * (pts[i].second / denom);
  }
  return acc;
}

Rat root_bound(const RatPoly& p) {
  if (p.is_zero() || p.degree() == 0) return Rat(1);
  Rat m(0);
  for (int i = 0; i < p.degree(); ++i)
    m = std::max(m, rat_abs(p.coeff(i) / p.leading()));
  return m + 1;
}

}  // namespace omegaforge
