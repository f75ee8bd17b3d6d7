#include "omegaforge/rat.hpp"

#include <cmath>
#include <cstdlib>

namespace omegaforge {

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Rat> rat_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!is_int(s)) return std::nullopt;
    return Rat(Int(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) return std::nullopt;
  Int d(den);
  if (d == 0) return std::nullopt;
  Rat r(Int(num), d);
  r.canonicalize();
  return r;
}

double rat_double(const Rat& q) { return q.get_d(); }

Rat rationalize(double x, const Int& max_den) {
  if (!std::isfinite(x)) return Rat(0);
  bool neg = x < 0;
  double v = std::fabs(x);
  // Continued fraction expansion with convergent tracking.
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double a_floor = std::floor(frac);
    if (a_floor > 1e18) break;
    Int a(static_cast<unsigned long>(a_floor));
    Int p2 = a * p1 + p0;
    Int q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - a_floor;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rat(0);
  Rat r(p1, q1);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

}  // namespace omegaforge
