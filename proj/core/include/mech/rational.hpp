#pragma once

// Exact rational arithmetic for all mechanism logic. Threshold comparisons
// such as c <= 1/l or harmonic partial sums against 1 are knife-edge;
// floating point is only allowed downstream of mechanism decisions.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mech {

using Rational = mpq_class;

// Accepts integer ("3"), fraction ("1/3") and decimal ("0.25") literals,
// each converted exactly. Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

// Canonical "p" or "p/q"; parse_rational(format_rational(q)) == q.
std::string format_rational(const Rational& q);

// Exact: every finite double is a binary rational. Throws ParseError on
// non-finite input.
Rational rational_from_double(double d);

double to_double(const Rational& q);

// ceil(q) for small quotients (used for ceil(alpha * kstar)).
long ceil_to_long(const Rational& q);

}  // namespace mech
