#ifndef CSRKIT_RATIONAL_HPP
#define CSRKIT_RATIONAL_HPP

#include <gmpxx.h>

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <string_view>

namespace csrkit {

// Exact scalar types. mpq_class keeps gcd(|num|, den) = 1 and den > 0 after
// every arithmetic operation, which is exactly the normalization contract the
// whole library relies on.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q" or "p" (optional sign, arbitrary precision). Throws
/// std::invalid_argument on malformed input or zero denominator.
Rational rat_parse(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rat_str(const Rational& q);

inline double rat_to_double(const Rational& q) { return q.get_d(); }

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Nearest rational with denominator <= max_den (continued fractions),
/// within |x - p/q| <= tol. Returns false when no convergent fits.
bool rationalize(double x, long max_den, double tol, Rational& out);

}  // namespace csrkit

namespace Eigen {

template <>
struct NumTraits<csrkit::Rational> : GenericNumTraits<csrkit::Rational> {
  using Real = csrkit::Rational;
  using NonInteger = csrkit::Rational;
  using Nested = csrkit::Rational;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 32,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // CSRKIT_RATIONAL_HPP
