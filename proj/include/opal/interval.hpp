// Certified real enclosures: directed-rounding interval arithmetic used for
// ln/exp bound checks. Every operation rounds outward, so [lo, hi] always
// contains the exact value; comparisons are three-valued.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace opal {

class MpFloat {
 public:
  explicit MpFloat(mpfr_prec_t prec = 128);
  MpFloat(const MpFloat& o);
  MpFloat(MpFloat&& o) noexcept;
  MpFloat& operator=(const MpFloat& o);
  MpFloat& operator=(MpFloat&& o) noexcept;
  ~MpFloat();
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const;
  std::string str(int digits = 17) const;

 private:
  mpfr_t v_;
  bool owned_ = true;
};

struct Interval {
  MpFloat lo, hi;
  explicit Interval(mpfr_prec_t prec = 128) : lo(prec), hi(prec) {}
  double mid() const;
  std::string str(int digits = 12) const;
};

Interval iv_from_z(const mpz_class& z, mpfr_prec_t prec);
Interval iv_from_q(const mpq_class& q, mpfr_prec_t prec);
Interval iv_from_long(long v, mpfr_prec_t prec);
Interval iv_add(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval iv_sub(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval iv_mul(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval iv_log(const Interval& a, mpfr_prec_t prec);  // requires a.lo > 0
Interval iv_exp(const Interval& a, mpfr_prec_t prec);
Interval iv_neg(const Interval& a, mpfr_prec_t prec);

enum class Cert { True, False, Unknown };

Cert iv_le(const Interval& a, const Interval& b);
Cert iv_lt(const Interval& a, const Interval& b);
Cert z_le_iv(const mpz_class& z, const Interval& b);
Cert iv_le_z(const Interval& a, const mpz_class& z);

// Runs `check` at doubling precision until it stops answering Unknown.
// Callers report Unknown past the cap as an inconclusive verdict.
template <class F>
Cert refine_cert(F&& check, mpfr_prec_t start = 128, mpfr_prec_t cap = 4096) {
  for (mpfr_prec_t p = start; p <= cap; p *= 2) {
    Cert c = check(p);
    if (c != Cert::Unknown) return c;
  }
  return Cert::Unknown;
}

}  // namespace opal
