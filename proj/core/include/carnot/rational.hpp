#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace carnot {

// Exact rational scalar. mpq_class keeps the canonical form the library
// relies on: gcd(|num|, den) = 1 and den >= 1 after every operation.
using Rational = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses "p", "p/q" or a plain decimal like "-0.25" (exact, base 10).
Rational rat_parse(const std::string& text);

// "p" when the denominator is 1, "p/q" otherwise.
std::string rat_str(const Rational& q);

// q^e for e >= 0, or exact inverse powers when q != 0.
Rational rat_pow(const Rational& q, long e);

inline double rat_double(const Rational& q) { return q.get_d(); }

inline Rational rat_of(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace carnot
