#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opal/interval.hpp"

using namespace opal;

TEST_CASE("enclosures contain the exact value and shrink with precision") {
  auto two = iv_from_long(2, 128);
  auto l2 = iv_log(two, 128);
  // ln 2 = 0.69314718055994530941...; the enclosure must meet this bracket
  mpz_class ten16("10000000000000000");
  mpq_class below(mpz_class("6931471805599453"), ten16), above(mpz_class("6931471805599454"), ten16);
  below.canonicalize();
  above.canonicalize();
  CHECK(mpfr_cmp_q(l2.lo.get(), above.get_mpq_t()) < 0);
  CHECK(mpfr_cmp_q(l2.hi.get(), below.get_mpq_t()) > 0);
  CHECK(mpfr_cmp(l2.lo.get(), l2.hi.get()) <= 0);
  CHECK(l2.hi.to_double() - l2.lo.to_double() < 1e-30);
  auto wide = iv_log(iv_from_long(2, 8), 8);
  CHECK(wide.hi.to_double() - wide.lo.to_double() > l2.hi.to_double() - l2.lo.to_double());
}

TEST_CASE("outward rounding through arithmetic") {
  auto third = iv_from_q(mpq_class(1, 3), 64);
  CHECK(mpfr_cmp(third.lo.get(), third.hi.get()) < 0);  // 1/3 is not a binary float
  auto one = iv_mul(third, iv_from_long(3, 64), 64);
  CHECK(z_le_iv(mpz_class(1), one) != Cert::False);
  CHECK(iv_le_z(one, mpz_class(1)) != Cert::False);
  auto neg = iv_neg(third, 64);
  CHECK(neg.hi.to_double() < 0);
  auto diff = iv_sub(one, one, 64);
  CHECK(diff.lo.to_double() <= 0);
  CHECK(diff.hi.to_double() >= 0);
}

TEST_CASE("three-valued comparisons") {
  auto a = iv_from_long(3, 64);
  auto b = iv_from_long(4, 64);
  CHECK(iv_lt(a, b) == Cert::True);
  CHECK(iv_lt(b, a) == Cert::False);
  auto l3 = iv_log(iv_from_long(3, 64), 64);
  CHECK(iv_le(l3, iv_from_long(2, 64)) == Cert::True);  // ln 3 < 2
  CHECK(z_le_iv(mpz_class(1), l3) == Cert::True);       // 1 <= ln 3
}

TEST_CASE("exp stays sound under extreme magnitudes") {
  mpz_class huge("1000000000000000000000000000000");
  auto mh = iv_neg(iv_from_z(huge, 256), 256);
  auto e = iv_exp(mh, 256);
  CHECK(mpfr_sgn(e.lo.get()) >= 0);
  CHECK(mpfr_sgn(e.hi.get()) > 0);  // upper endpoint stays above the true value
  CHECK(iv_le_z(e, mpz_class(1)) == Cert::True);
}

TEST_CASE("refinement resolves borderline comparisons") {
  // decide ln(1098) + 1097*ln(1098/1097) >= 8 (true, margin ~8e-4)
  auto check = [&](mpfr_prec_t p) {
    auto a = iv_log(iv_from_long(1098, p), p);
    auto ratio = iv_from_q(mpq_class(1098, 1097), p);
    auto b = iv_mul(iv_from_long(1097, p), iv_log(ratio, p), p);
    return z_le_iv(mpz_class(8), iv_add(a, b, p));
  };
  CHECK(refine_cert(check) == Cert::True);
  // and the matching failure one step below (margin ~-1.3e-4)
  auto check2 = [&](mpfr_prec_t p) {
    auto a = iv_log(iv_from_long(1097, p), p);
    auto ratio = iv_from_q(mpq_class(1097, 1096), p);
    auto b = iv_mul(iv_from_long(1096, p), iv_log(ratio, p), p);
    return z_le_iv(mpz_class(8), iv_add(a, b, p));
  };
  CHECK(refine_cert(check2) == Cert::False);
}
