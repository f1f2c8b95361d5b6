#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "opal/series.hpp"

using namespace opal;

namespace {

HilbertSeries profile(long horizon, const std::function<long(long)>& f) {
  std::vector<mpz_class> c(static_cast<size_t>(horizon) + 1);
  for (long d = 0; d <= horizon; ++d) c[static_cast<size_t>(d)] = f(d);
  return HilbertSeries::from_dense(std::move(c));
}

// Independent oracle for the raw estimate: double-precision libm on double
// partial sums (valid while the sums stay far below 2^53).
double raw_oracle(const HilbertSeries& h, long n) {
  double s = 0;
  for (long d = 0; d <= n; ++d) s += h.coeff(d).get_d();
  return std::log(s) / std::log(static_cast<double>(n));
}

long isqrt_long(long v) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while ((r + 1) * (r + 1) <= v) ++r;
  while (r * r > v) --r;
  return r;
}

}  // namespace

TEST_CASE("partial sums and coefficient access") {
  auto h = HilbertSeries::from_dense({mpz_class(1), mpz_class(0), mpz_class(2), mpz_class(5)});
  CHECK(h.horizon() == 3);
  CHECK(h.coeff(0) == 1);
  CHECK(h.coeff(2) == 2);
  CHECK(h.coeff(7) == 0);
  CHECK(h.coeff(-1) == 0);
  CHECK(h.partial_sum(1) == 1);
  CHECK(h.partial_sum(3) == 8);
  CHECK(h.partial_sum(100) == 8);
  auto sums = h.partial_sums();
  REQUIRE(sums.size() == 4);
  CHECK(sums[3] == 8);

  CHECK_THROWS_AS(HilbertSeries::from_dense({mpz_class(-1)}), Error);

  std::map<mpz_class, mpz_class> big;
  mpz_class huge = 1;
  for (int i = 0; i < 30; ++i) huge *= 10;  // 10^30
  big[huge] = 7;
  big[2] = 3;
  auto s = HilbertSeries::from_sparse(big);
  CHECK(s.is_sparse);
  CHECK(s.coeff(2) == 3);
  CHECK(s.partial_sum(5) == 3);
  CHECK(s.sparse.at(huge) == 7);
  CHECK_THROWS_AS(s.horizon(), Error);
  CHECK_THROWS_AS(HilbertSeries::from_sparse({{mpz_class(-2), mpz_class(1)}}), Error);
}

TEST_CASE("gk estimate: constant profile stays at the raw logarithmic value") {
  auto ones = profile(1000, [](long) { return 1; });
  auto r = gk_estimate(ones, 1000);
  // Oracle: log_1000(1001), computed independently in double precision.
  CHECK(std::abs(r.raw - raw_oracle(ones, 1000)) < 1e-9);
  CHECK(std::abs(r.raw - 1.000144766) < 1e-6);
  CHECK(std::abs(r.c_hat) < kGkSlopeThreshold);
  CHECK_FALSE(r.used_extrapolation);
  CHECK(r.headline == r.raw);
  CHECK(std::abs(r.headline - 1.0) < 1e-3);
  REQUIRE(!r.sequence.empty());
  CHECK(r.sequence.back().first == 1000);
  // The raw estimates decrease monotonically toward 1 along the doubling ladder.
  for (size_t i = 1; i < r.sequence.size(); ++i)
    CHECK(r.sequence[i].second < r.sequence[i - 1].second);
}

TEST_CASE("gk estimate: linear-coefficient profile extrapolates to two") {
  auto lin = profile(1000, [](long d) { return d; });
  auto r = gk_estimate(lin, 1000);
  CHECK(std::abs(r.raw - raw_oracle(lin, 1000)) < 1e-9);
  CHECK(r.raw < 1.95);  // the raw value is visibly biased low
  CHECK(r.used_extrapolation);
  CHECK(std::abs(r.headline - 2.0) < 0.01);
}

TEST_CASE("gk estimate: degenerate inputs") {
  auto zero = profile(100, [](long) { return 0; });
  auto r = gk_estimate(zero, 100);
  CHECK(r.zero_sum);
  CHECK(r.headline == 0.0);

  auto ones = profile(100, [](long) { return 1; });
  CHECK_THROWS_AS(gk_estimate(ones, 3), Error);
  CHECK_THROWS_AS(gk_estimate(ones, 101), Error);

  // All mass after the midpoint: the two-point fit is unavailable, so the raw
  // value is reported unchanged.
  auto late = profile(1000, [](long d) { return d == 900 ? 1 : 0; });
  auto rl = gk_estimate(late, 1000);
  CHECK(rl.headline == rl.raw);
  CHECK_FALSE(rl.used_extrapolation);
}

TEST_CASE("growth classification bands") {
  CHECK(classify_growth(profile(1000, [](long) { return 1; })).cls == GrowthClass::Gk1);

  auto lin = classify_growth(profile(1000, [](long d) { return d; }));
  CHECK(lin.cls == GrowthClass::GkD);
  CHECK(lin.d == 2);

  auto quad = classify_growth(profile(1000, [](long d) { return d * d; }));
  CHECK(quad.cls == GrowthClass::GkD);
  CHECK(quad.d == 3);

  auto fin = classify_growth(profile(1000, [](long d) { return d <= 5 ? 1 : 0; }));
  CHECK(fin.cls == GrowthClass::FiniteDimensional);

  // Partial sums near n^{3/2} land in the excluded band and must be flagged.
  auto gap = classify_growth(profile(1000, [](long d) { return isqrt_long(d); }));
  CHECK(gap.cls == GrowthClass::GapFlag);
  CHECK(gap.headline > kGrowthGk1Band);
  CHECK(gap.headline < kGrowthGapBand);
  CHECK(!gap.describe().empty());

  CHECK_THROWS_AS(classify_growth(profile(50, [](long) { return 1; })), Error);
}

TEST_CASE("multiplicity: tail window maxima with growth guard") {
  // Dimension profiles of the two reference direct summands: the first is 1 in
  // odd degrees, the second is 3 in positive even degrees and 1 in odd ones.
  auto P = profile(1000, [](long d) { return d % 2 == 1 ? 1 : 0; });
  auto Q = profile(1000, [](long d) {
    if (d == 0) return 0L;
    return d % 2 == 0 ? 3L : 1L;
  });
  auto PQ = profile(1000, [](long d) {
    if (d == 0) return 0L;
    return d % 2 == 0 ? 3L : 2L;
  });
  auto mP = multiplicity(P), mQ = multiplicity(Q), mPQ = multiplicity(PQ);
  REQUIRE(mP.finite);
  REQUIRE(mQ.finite);
  REQUIRE(mPQ.finite);
  CHECK(mP.value == 1);
  CHECK(mQ.value == 3);
  CHECK(mPQ.value == 3);
  CHECK(mPQ.value < mP.value + mQ.value);  // strictly subadditive pair

  auto fin = multiplicity(profile(1000, [](long d) { return d < 10 ? 4 : 0; }));
  CHECK(fin.finite);
  CHECK(fin.value == 0);

  auto grow = multiplicity(profile(1000, [](long d) { return d; }));
  CHECK_FALSE(grow.finite);

  // A spike before the tail window must not leak into the reported value.
  auto spike = multiplicity(profile(1000, [](long d) { return d == 400 ? 100 : 1; }));
  REQUIRE(spike.finite);
  CHECK(spike.value == 1);
  CHECK(spike.window_start == 500);

  CHECK_THROWS_AS(multiplicity(profile(4, [](long) { return 1; })), Error);
}

TEST_CASE("multiplicity is subadditive on eventually periodic profiles") {
  std::mt19937 rng(0);
  for (int trial = 0; trial < 50; ++trial) {
    auto gen = [&rng]() {
      int period = 1 + static_cast<int>(rng() % 6);
      std::vector<long> pat(static_cast<size_t>(period));
      for (auto& v : pat) v = static_cast<long>(rng() % 5);
      return pat;
    };
    auto pa = gen(), pb = gen();
    auto A = profile(256, [&](long d) { return pa[static_cast<size_t>(d) % pa.size()]; });
    auto B = profile(256, [&](long d) { return pb[static_cast<size_t>(d) % pb.size()]; });
    auto S = profile(256, [&](long d) {
      return pa[static_cast<size_t>(d) % pa.size()] + pb[static_cast<size_t>(d) % pb.size()];
    });
    auto ma = multiplicity(A), mb = multiplicity(B), ms = multiplicity(S);
    REQUIRE(ma.finite);
    REQUIRE(mb.finite);
    REQUIRE(ms.finite);
    CHECK(ms.value <= ma.value + mb.value);
    CHECK(ms.value >= std::max(ma.value, mb.value));
  }
}

TEST_CASE("rational form fitting recovers closed forms") {
  auto check_fit = [](const HilbertSeries& h, int max_den, const std::string& want) {
    auto rf = fit_rational(h, max_den);
    REQUIRE(rf.has_value());
    CHECK(rf->str() == want);
    auto re = rf->expand(h.horizon());
    for (long d = 0; d <= h.horizon(); ++d)
      CHECK(re[static_cast<size_t>(d)] == mpq_class(h.coeff(d)));
  };
  check_fit(profile(30, [](long d) { return d == 0 ? 0 : 1; }), 4, "t/(1 - t)");
  check_fit(profile(30, [](long d) { return d % 2; }), 4, "t/(1 - t^2)");
  check_fit(profile(30, [](long d) { return d; }), 4, "t/(1 - 2*t + t^2)");
  check_fit(profile(30, [](long d) {
              long v = 1;
              for (long i = 0; i < d; ++i) v *= 2;
              return v;
            }),
            4, "1/(1 - 2*t)");
  check_fit(profile(30, [](long d) { return d == 0 ? 1 : 2; }), 4, "(1 + t)/(1 - t)");
  // Polynomial series: the register is all-zero taps, so no denominator prints.
  check_fit(profile(20, [](long d) { return d <= 2 ? 1 : 0; }), 5, "1 + t + t^2");
}

TEST_CASE("rational form fitting refuses noise and short horizons") {
  const long digits[] = {3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4, 6};
  auto noisy = profile(20, [&](long d) { return digits[d]; });
  CHECK_FALSE(fit_rational(noisy, 3).has_value());

  auto ones = profile(4, [](long) { return 1; });
  CHECK_THROWS_AS(fit_rational(ones, 3), Error);
  CHECK_THROWS_AS(fit_rational(noisy, 0), Error);
}

TEST_CASE("bound check: certified comparisons including exact boundaries") {
  auto ones = profile(1000, [](long) { return 1; });
  BoundExpr loose;  // 2 + 2*(n+1)*ln(n+1)
  loose.c0 = 2;
  loose.c2 = 2;
  CHECK(loose.str() == "2 + 2*(n+1)*ln(n+1)");
  auto ok = series_bound_check(ones, loose, 1, 1000);
  CHECK(ok.verdict == Cert::True);
  auto ok_serial = series_bound_check_serial(ones, loose, 1, 1000);
  CHECK(ok_serial.verdict == Cert::True);

  // Exact boundary: partial sums equal the bound everywhere; the rational
  // path certifies equality as <=.
  BoundExpr tight;
  tight.c0 = 1;
  tight.c1 = 1;
  auto eq = series_bound_check(ones, tight, 0, 1000);
  CHECK(eq.verdict == Cert::True);

  // Off by one below: fails immediately at the left endpoint.
  BoundExpr below;
  below.c1 = 1;
  auto bad = series_bound_check(ones, below, 0, 1000);
  CHECK(bad.verdict == Cert::False);
  CHECK(bad.witness == 0);

  // Linear-coefficient sums cross 2(n+1)ln(n+1)+2 first at n = 10:
  // sum(10) = 55 > 2*11*ln(11) + 2 = 54.75..., while sum(9) = 45 < 48.05...
  auto lin = profile(1000, [](long d) { return d; });
  auto cross = series_bound_check(lin, loose, 1, 1000);
  CHECK(cross.verdict == Cert::False);
  CHECK(cross.witness == 10);
  auto cross_serial = series_bound_check_serial(lin, loose, 1, 1000);
  CHECK(cross_serial.verdict == cross.verdict);
  CHECK(cross_serial.witness == cross.witness);

  CHECK_THROWS_AS(series_bound_check(ones, loose, 5, 4), Error);
  CHECK_THROWS_AS(series_bound_check(ones, loose, 0, 2000), Error);
}
