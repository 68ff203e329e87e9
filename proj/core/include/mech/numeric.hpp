#pragma once

// Certified rational enclosures of transcendental values (MPFR directed
// rounding) plus incremental exact harmonic partial sums. The enclosures let
// tests assert inequalities involving ln and 1/e on the safe side without
// ever trusting floating point.

#include <vector>

#include "mech/rational.hpp"

namespace mech {

struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

// Encloses ln(q), q > 0, with width <= max_width (default 1e-9). Both
// endpoints are exact rationals; lo <= ln(q) <= hi is guaranteed.
RationalInterval log_enclosure(const Rational& q,
                               const Rational& max_width = Rational(1, 1000000000));

// Certified bounds on 1/e: inv_e_lower() < 1/e < inv_e_upper(), enclosure
// width below 2^-90.
const Rational& inv_e_upper();
const Rational& inv_e_lower();

// Sliding window of consecutive reciprocals 1/first + ... + 1/(first+length-1),
// maintained exactly. Supports the monotone scans behind the harmonic reward
// offsets, where recomputing each window from scratch would be quadratic.
class HarmonicWindow {
 public:
  long first() const { return first_; }
  long length() const { return length_; }
  const Rational& sum() const { return sum_; }

  // Appends 1/(first+length).
  void push_back();
  // Drops 1/first.
  void pop_front();

 private:
  long first_ = 1;
  long length_ = 0;
  Rational sum_ = 0;
};

// Exact sum 1/from + ... + 1/to (inclusive); intended for short tails.
Rational reciprocal_sum(long from, long to);

}  // namespace mech
