#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ocs {

// All exact arithmetic in this library runs on GMP rationals. Values are
// kept canonical (reduced, positive denominator) at every boundary.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p" or "p/q". Throws on malformed input or q == 0.
inline Rational rat_parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("malformed rational: '" + text + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("rational with zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

// Canonical decimal string, "p" when the denominator is 1, else "p/q".
inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline double rat_double(const Rational& q) { return q.get_d(); }

}  // namespace ocs
