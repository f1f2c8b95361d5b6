// Dimension series and their invariants: growth estimates, multiplicity,
// rational-form fitting, and certified asymptotic bound checks.
#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opal/error.hpp"
#include "opal/interval.hpp"

namespace opal {

// Coefficients are exact non-negative integers. Dense mode indexes by machine
// degree; sparse mode keys by arbitrary-precision degree for schedules whose
// degrees exceed machine words.
struct HilbertSeries {
  std::vector<mpz_class> dense;
  std::map<mpz_class, mpz_class> sparse;
  bool is_sparse = false;

  static HilbertSeries from_dense(std::vector<mpz_class> c);
  static HilbertSeries from_sparse(std::map<mpz_class, mpz_class> c);
  long horizon() const;  // dense: last stored degree
  const mpz_class& coeff(long d) const;
  mpz_class partial_sum(long n) const;
  std::vector<mpz_class> partial_sums() const;  // index n -> sum of coeffs 0..n
};

// ------------------------------------------------------------ GK estimation

// The raw estimate is log_n of the partial sum. The extrapolated value is the
// dyadic log-slope of the partial sums with one Richardson step (slopes over
// [n/2, n] and [n/4, n/2]), which cancels both the constant-factor bias of the
// raw value and the leading finite-size correction of the slopes. The headline
// reports the extrapolated value when the correction c_hat = extrapolated - raw
// is material, and the raw value otherwise (policy threshold pinned here so
// reports are reproducible).
struct GkReport {
  double raw = 0;
  double extrapolated = 0;
  double headline = 0;
  double c_hat = 0;
  bool zero_sum = false;
  bool used_extrapolation = false;
  std::vector<std::pair<long, double>> sequence;  // (sample point, raw estimate)
};
inline constexpr double kGkSlopeThreshold = 0.1;

GkReport gk_estimate(const HilbertSeries& h, long n);

enum class GrowthClass { FiniteDimensional, Gk1, GapFlag, GkD };

struct GrowthReport {
  GrowthClass cls = GrowthClass::FiniteDimensional;
  double headline = 0;
  int d = 0;                 // for GkD
  double tail_sum_over_n2 = 0;  // empirical limsup proxy for the quadratic test
  GkReport gk;
  std::string describe() const;
};
// Class bands: <=1.25 linear-range, (1.25,1.75) flagged gap, >=1.75 rounded d.
inline constexpr double kGrowthGk1Band = 1.25;
inline constexpr double kGrowthGapBand = 1.75;

GrowthReport classify_growth(const HilbertSeries& h);  // dense horizon >= 100

// ------------------------------------------------------------ multiplicity

// Eventual limsup of the coefficients over the stable tail window (the last
// half of the horizon). Growth is detected by comparing the maxima of the two
// most recent quarter windows; growing input has no finite multiplicity.
struct MultiplicityReport {
  bool finite = true;
  mpz_class value = 0;
  long window_start = 0;
};
MultiplicityReport multiplicity(const HilbertSeries& h);

// ------------------------------------------------------------ rational form

struct RationalForm {
  std::vector<mpq_class> num, den;  // low degree first, den[0] == 1
  std::string str() const;
  std::vector<mpq_class> expand(long horizon) const;
};

// Minimal linear recurrence (Berlekamp-Massey over Q); the result re-expands
// to every stored coefficient exactly or nothing is returned. Requires
// horizon >= 2*max_den_deg.
std::optional<RationalForm> fit_rational(const HilbertSeries& h, int max_den_deg);

// ------------------------------------------------------------ bound checks

// bound(n) = c0 + c1*n + c2*(n+1)ln(n+1) + c3*n*ln(n), coefficients exact.
struct BoundExpr {
  mpq_class c0 = 0, c1 = 0, c2 = 0, c3 = 0;
  std::string str() const;
  Interval eval(long n, mpfr_prec_t prec) const;
};

// Certifies partial_sum(n) <= bound(n) for every n in [lo, hi].
struct BoundCheckResult {
  Cert verdict = Cert::Unknown;
  long witness = -1;  // first violated (False) or undecided (Unknown) point
};
BoundCheckResult series_bound_check(const HilbertSeries& h, const BoundExpr& b, long lo, long hi);
BoundCheckResult series_bound_check_serial(const HilbertSeries& h, const BoundExpr& b, long lo,
                                           long hi);

}  // namespace opal
