#pragma once

// Exact rational arithmetic and exact comparison of rational powers.
// Every rigorous decision in the library bottoms out here or in
// interval.hpp; nothing in this header ever rounds.

#include <gmpxx.h>

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

namespace badlatt {

using Int = mpz_class;
using Rational = mpq_class;

// Outcome of a rigorous comparison.  Indeterminate means the interval
// machinery could not separate the operands at the current precision;
// callers escalate precision (see cmp_escalating) before treating it
// as an error.
enum class Cmp { Less, Equal, Greater, Indeterminate };

inline Cmp cmp_of_int(int c) {
    return c < 0 ? Cmp::Less : (c > 0 ? Cmp::Greater : Cmp::Equal);
}

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Int& num, const Int& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// "p/q" with q omitted when 1.
std::string rat_to_string(const Rational& x);
Rational rat_from_string(const std::string& s);

Int rat_floor(const Rational& x);
Int rat_ceil(const Rational& x);

// Nearest integer, ties toward +infinity (only used where ties are benign).
Int rat_round(const Rational& x);

// Exact a^p for integer p (p < 0 requires a != 0).
Rational rat_pow(const Rational& a, long p);

// Exact ordering of a^p vs b^q for positive rationals a, b and integer
// exponents.  Decides threshold comparisons whenever both sides are
// rational powers of rationals; never returns Indeterminate.
Cmp cmp_power(const Rational& a, long p, const Rational& b, long q);

// base^(s/t) as an exact rational when one exists (i.e. when numerator and
// denominator of base are perfect t-th powers), otherwise nullopt.
std::optional<Rational> try_exact_pow(const Rational& base, const Rational& expo);

// Escalation cap for interval precision, in bits.  Default 4096,
// overridable with BADLATT_PRECISION_CAP.
long precision_cap();

constexpr long kDefaultPrecision = 128;

}  // namespace badlatt
