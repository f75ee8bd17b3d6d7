#ifndef OMEGAFORGE_RAT_HPP
#define OMEGAFORGE_RAT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace omegaforge {

// Arbitrary-precision integers and rationals. mpq_class keeps values in
// canonical form (lowest terms, positive denominator) as long as they are
// produced through arithmetic or the helpers below.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline int sign_of(const Rat& r) { return sgn(r); }

inline Int floor_int(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

inline Int ceil_int(const Rat& q) {
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Renders "p/q", or just "p" for integers.
std::string rat_str(const Rat& q);

// Parses "p", "-p", "p/q"; whitespace is not tolerated.
std::optional<Rat> rat_parse(const std::string& s);

double rat_double(const Rat& q);

// Best rational approximation of x with denominator <= max_den, by
// continued-fraction convergents.
Rat rationalize(double x, const Int& max_den);

}  // namespace omegaforge

#endif
