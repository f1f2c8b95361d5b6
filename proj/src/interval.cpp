#include "opal/interval.hpp"

#include <algorithm>
#include <stdexcept>

#include "opal/field.hpp"

namespace opal {

MpFloat::MpFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); }

MpFloat::MpFloat(const MpFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
}

MpFloat::MpFloat(MpFloat&& o) noexcept {
  v_[0] = o.v_[0];
  o.owned_ = false;
}

MpFloat& MpFloat::operator=(const MpFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

MpFloat& MpFloat::operator=(MpFloat&& o) noexcept {
  if (this != &o) {
    if (owned_) mpfr_clear(v_);
    v_[0] = o.v_[0];
    owned_ = true;
    o.owned_ = false;
  }
  return *this;
}

MpFloat::~MpFloat() {
  if (owned_) mpfr_clear(v_);
}

double MpFloat::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

std::string MpFloat::str(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

double Interval::mid() const { return (lo.to_double() + hi.to_double()) / 2; }

std::string Interval::str(int digits) const {
  return "[" + lo.str(digits) + ", " + hi.str(digits) + "]";
}

Interval iv_from_z(const mpz_class& z, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo.get(), z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi.get(), z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval iv_from_q(const mpq_class& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval iv_from_long(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo.get(), v, MPFR_RNDD);
  mpfr_set_si(r.hi.get(), v, MPFR_RNDU);
  return r;
}

Interval iv_add(const Interval& a, const Interval& b, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_add(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_add(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return r;
}

Interval iv_sub(const Interval& a, const Interval& b, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_sub(r.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
  mpfr_sub(r.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
  return r;
}

Interval iv_mul(const Interval& a, const Interval& b, mpfr_prec_t prec) {
  // general sign handling: min/max over the four endpoint products
  Interval r(prec);
  MpFloat t(prec);
  bool first = true;
  mpfr_srcptr as[2] = {a.lo.get(), a.hi.get()};
  mpfr_srcptr bs[2] = {b.lo.get(), b.hi.get()};
  for (auto x : as)
    for (auto y : bs) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), r.lo.get()) < 0) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), r.hi.get()) > 0) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  return r;
}

Interval iv_log(const Interval& a, mpfr_prec_t prec) {
  if (mpfr_sgn(a.lo.get()) <= 0) throw Error("iv_log requires a strictly positive enclosure");
  Interval r(prec);
  mpfr_log(r.lo.get(), a.lo.get(), MPFR_RNDD);
  mpfr_log(r.hi.get(), a.hi.get(), MPFR_RNDU);
  return r;
}

Interval iv_exp(const Interval& a, mpfr_prec_t prec) {
  // under/overflow still yields sound directed-rounding endpoints
  Interval r(prec);
  mpfr_exp(r.lo.get(), a.lo.get(), MPFR_RNDD);
  mpfr_exp(r.hi.get(), a.hi.get(), MPFR_RNDU);
  return r;
}

Interval iv_neg(const Interval& a, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_neg(r.lo.get(), a.hi.get(), MPFR_RNDD);
  mpfr_neg(r.hi.get(), a.lo.get(), MPFR_RNDU);
  return r;
}

Cert iv_le(const Interval& a, const Interval& b) {
  if (mpfr_cmp(a.hi.get(), b.lo.get()) <= 0) return Cert::True;
  if (mpfr_cmp(a.lo.get(), b.hi.get()) > 0) return Cert::False;
  return Cert::Unknown;
}

Cert iv_lt(const Interval& a, const Interval& b) {
  if (mpfr_cmp(a.hi.get(), b.lo.get()) < 0) return Cert::True;
  if (mpfr_cmp(a.lo.get(), b.hi.get()) >= 0) return Cert::False;
  return Cert::Unknown;
}

Cert z_le_iv(const mpz_class& z, const Interval& b) {
  if (mpfr_cmp_z(b.lo.get(), z.get_mpz_t()) >= 0) return Cert::True;
  if (mpfr_cmp_z(b.hi.get(), z.get_mpz_t()) < 0) return Cert::False;
  return Cert::Unknown;
}

Cert iv_le_z(const Interval& a, const mpz_class& z) {
  if (mpfr_cmp_z(a.hi.get(), z.get_mpz_t()) <= 0) return Cert::True;
  if (mpfr_cmp_z(a.lo.get(), z.get_mpz_t()) > 0) return Cert::False;
  return Cert::Unknown;
}

}  // namespace opal
