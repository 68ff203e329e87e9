#include "mech/numeric.hpp"

#include <cmath>

#include "doctest.h"

using mech::Rational;

TEST_CASE("HarmonicWindow tracks exact sliding sums") {
  mech::HarmonicWindow window;
  window.push_back();  // [1]
  CHECK(window.sum() == Rational(1));
  window.push_back();  // [1,2]
  CHECK(window.sum() == Rational(3, 2));
  window.pop_front();  // [2]
  CHECK(window.sum() == Rational(1, 2));
  CHECK(window.first() == 2);
  CHECK(window.length() == 1);
  window.push_back();  // [2,3]
  CHECK(window.sum() == Rational(1, 2) + Rational(1, 3));
}

TEST_CASE("reciprocal_sum matches direct evaluation") {
  CHECK(mech::reciprocal_sum(1, 2) == Rational(3, 2));
  CHECK(mech::reciprocal_sum(3, 5) == Rational(1, 3) + Rational(1, 4) + Rational(1, 5));
  CHECK(mech::reciprocal_sum(5, 5) == Rational(1, 5));
}

TEST_CASE("log_enclosure brackets the true logarithm tightly") {
  const Rational width_cap(1, 1000000000);
  for (const char* text : {"2", "1/2", "22/7", "1000000", "1/1000000", "1"}) {
    const Rational q = mech::parse_rational(text);
    const mech::RationalInterval enclosure = mech::log_enclosure(q);
    CHECK(enclosure.lo <= enclosure.hi);
    CHECK(enclosure.width() <= width_cap);
    const double reference = std::log(mech::to_double(q));
    CHECK(mech::to_double(enclosure.lo) <= reference + 1e-9);
    CHECK(mech::to_double(enclosure.hi) >= reference - 1e-9);
  }

  // ln 2 = 0.693147180559945309417...
  const auto ln2 = mech::log_enclosure(Rational(2));
  CHECK(ln2.lo <= mech::parse_rational("0.6931471805599454"));
  CHECK(ln2.hi >= mech::parse_rational("0.6931471805599453"));

  const auto ln1 = mech::log_enclosure(Rational(1));
  CHECK(ln1.contains(Rational(0)));
}

TEST_CASE("inv_e bounds bracket 1/e") {
  // 1/e = 0.367879441171442321595...
  CHECK(mech::inv_e_lower() < mech::inv_e_upper());
  CHECK(mech::inv_e_upper() - mech::inv_e_lower() < Rational(1, 1000000000000000000L));
  CHECK(mech::inv_e_lower() < mech::parse_rational("0.36787944117144233"));
  CHECK(mech::inv_e_upper() > mech::parse_rational("0.36787944117144232"));
}
