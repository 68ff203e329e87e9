#include "mech/rational.hpp"

#include <cctype>
#include <cmath>

#include "mech/errors.hpp"

namespace mech {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  // Trim surrounding whitespace.
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw ParseError("empty rational literal");
  s = s.substr(first, last - first + 1);

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) throw ParseError("empty rational literal");

  Rational value;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("bad fraction literal: " + std::string(text));
    }
    mpz_class n(num), d(den);
    if (d == 0) throw ParseError("zero denominator: " + std::string(text));
    value = Rational(n, d);
    value.canonicalize();
  } else if (const auto dot = s.find('.'); dot != std::string::npos) {
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw ParseError("bad decimal literal: " + std::string(text));
    }
    mpz_class scaled(whole.empty() ? "0" : whole);
    mpz_class den(1);
    for (char c : frac) {
      scaled = scaled * 10 + (c - '0');
      den *= 10;
    }
    value = Rational(scaled, den);
    value.canonicalize();
  } else {
    if (!all_digits(s)) throw ParseError("bad integer literal: " + std::string(text));
    value = Rational(mpz_class(s));
  }
  if (negative) value = -value;
  return value;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_double(double d) {
  if (!std::isfinite(d)) throw ParseError("non-finite double");
  Rational q;
  mpq_set_d(q.get_mpq_t(), d);
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

long ceil_to_long(const Rational& q) {
  mpz_class result;
  mpz_cdiv_q(result.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  if (!result.fits_slong_p()) throw Error("ceil_to_long: value out of range");
  return result.get_si();
}

}  // namespace mech
