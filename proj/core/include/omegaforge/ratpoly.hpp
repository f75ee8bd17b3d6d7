#ifndef OMEGAFORGE_RATPOLY_HPP
#define OMEGAFORGE_RATPOLY_HPP

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "omegaforge/rat.hpp"

namespace omegaforge {

// Univariate polynomial over Q, coefficients lowest degree first.
// Invariant: leading coefficient nonzero unless the polynomial is zero
// (empty coefficient vector).
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  RatPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

  static RatPoly zero() { return RatPoly(); }
  static RatPoly constant(const Rat& a) { return RatPoly({a}); }
  static RatPoly x() { return RatPoly({Rat(0), Rat(1)}); }
  // (x - r)
  static RatPoly linear_root(const Rat& r) { return RatPoly({-r, Rat(1)}); }
  static RatPoly from_longs(const std::vector<long>& v);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const Rat& leading() const { return c_.back(); }

  Rat eval(const Rat& x) const;
  int eval_sign(const Rat& x) const { return sign_of(eval(x)); }
  double eval_double(double x) const;
  // Horner over an interval [lo, hi]; returns an enclosure of p([lo, hi]).
  std::pair<Rat, Rat> eval_interval(const Rat& lo, const Rat& hi) const;

  RatPoly derivative() const;
  RatPoly integral() const;  // antiderivative with zero constant term

  RatPoly operator-() const;
  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly operator*(const Rat& s) const;
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  // Euclidean division over Q; returns {quotient, remainder}.
  std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const;

  // p(a*x + b)
  RatPoly compose_affine(const Rat& a, const Rat& b) const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

// gcd with primitive pseudo-remainder sequence; result is monic.
RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);

// Same distinct roots, all with multiplicity one. Errors on zero input.
RatPoly squarefree(const RatPoly& p);

// Yun decomposition: list of (factor, multiplicity), factors squarefree and
// pairwise coprime, product of factor^mult = p up to a constant.
std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& p);

// Resultant of two nonzero polynomials, via the subresultant PRS.
Rat resultant(const RatPoly& a, const RatPoly& b);

// Lagrange interpolation through distinct nodes.
RatPoly lagrange_interpolate(const std::vector<std::pair<Rat, Rat>>& pts);

// Cauchy bound: all real roots of p lie in [-B, B].
Rat root_bound(const RatPoly& p);

}  // namespace omegaforge

#endif
