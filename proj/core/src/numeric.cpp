#include "mech/numeric.hpp"

#include <mpfr.h>

#include "mech/errors.hpp"

namespace mech {

namespace {

Rational mpfr_to_rational(const mpfr_t x) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

}  // namespace

RationalInterval log_enclosure(const Rational& q, const Rational& max_width) {
  if (q <= 0) throw Error("log_enclosure: argument must be positive");
  for (mpfr_prec_t prec = 96;; prec *= 2) {
    mpfr_t x, lo, hi;
    mpfr_init2(x, prec);
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);

    // Round the input and the log downward / upward so the interval is safe.
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDD);
    mpfr_log(lo, x, MPFR_RNDD);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDU);
    mpfr_log(hi, x, MPFR_RNDU);

    RationalInterval out{mpfr_to_rational(lo), mpfr_to_rational(hi)};
    mpfr_clear(x);
    mpfr_clear(lo);
    mpfr_clear(hi);
    if (out.width() <= max_width) return out;
    if (prec > 1 << 20) throw Error("log_enclosure: precision runaway");
  }
}

namespace {

RationalInterval compute_inv_e() {
  const mpfr_prec_t prec = 128;
  mpfr_t one, e_down, e_up, lo, hi;
  mpfr_init2(one, prec);
  mpfr_init2(e_down, prec);
  mpfr_init2(e_up, prec);
  mpfr_init2(lo, prec);
  mpfr_init2(hi, prec);

  mpfr_set_ui(one, 1, MPFR_RNDN);
  mpfr_exp(e_down, one, MPFR_RNDD);
  mpfr_exp(e_up, one, MPFR_RNDU);
  mpfr_ui_div(hi, 1, e_down, MPFR_RNDU);  // 1 / (e rounded down), rounded up
  mpfr_ui_div(lo, 1, e_up, MPFR_RNDD);

  RationalInterval out{mpfr_to_rational(lo), mpfr_to_rational(hi)};
  mpfr_clear(one);
  mpfr_clear(e_down);
  mpfr_clear(e_up);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return out;
}

const RationalInterval& inv_e_interval() {
  static const RationalInterval interval = compute_inv_e();
  return interval;
}

}  // namespace

const Rational& inv_e_upper() { return inv_e_interval().hi; }
const Rational& inv_e_lower() { return inv_e_interval().lo; }

void HarmonicWindow::push_back() {
  sum_ += Rational(1, first_ + length_);
  ++length_;
}

void HarmonicWindow::pop_front() {
  if (length_ == 0) throw Error("HarmonicWindow::pop_front on empty window");
  sum_ -= Rational(1, first_);
  ++first_;
  --length_;
}

Rational reciprocal_sum(long from, long to) {
  Rational sum = 0;
  for (long x = from; x <= to; ++x) sum += Rational(1, x);
  return sum;
}

}  // namespace mech
