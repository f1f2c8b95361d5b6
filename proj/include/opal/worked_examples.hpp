// Three end-to-end pipelines over the library: a field-tower algebra whose
// dimension growth is governed by f(x) = (x+1)ln(x+1) - x*ln(x); the pattern
// algebra on generators of scheduled degrees with its window/convolution
// analysis and the log-scale schedule certificates; and the squarefree
// algebra on generators of binary degrees with its cancellation/saturation
// behavior. Each returns a structured report suitable for JSON export.
#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "opal/algebra.hpp"
#include "opal/interval.hpp"
#include "opal/series.hpp"

namespace opal {

// ---------------------------------------------------------------- pipeline 1

// Smallest positive integer lambda with f(lambda) >= m, certified by interval
// evaluation: f(lambda - 1) < m <= f(lambda) (the left check is skipped for
// lambda = 1). Grows like e^{m-1}, hence the big-integer result.
mpz_class lambda_of(long m);

// Certified enclosure of f(x) at an integer point.
Interval f_growth(const mpz_class& x, mpfr_prec_t prec);

struct Ex61Config {
  std::vector<long> tower_dims;  // dim F_s, strictly increasing, first > 1
  long horizon = 10000;
};

struct Ex61Window {
  mpz_class start;  // first degree of the regime
  long dim = 1;     // component dimension throughout the regime
};

struct Ex61Report {
  std::vector<std::pair<long, mpz_class>> lambdas;  // (dim F_s, lambda(dim F_s))
  std::vector<Ex61Window> windows;                  // clipped to the horizon
  mpz_class a;                                      // constant in the sum bound
  HilbertSeries series;
  Cert bound_verdict = Cert::Unknown;  // partial sums <= a + (n+1)ln(n+1)
  long bound_witness = -1;
  Cert perdegree_verdict = Cert::Unknown;  // dim A_i <= f(i) above the first window
  long perdegree_witness = -1;
  GkReport gk;
  std::string describe() const;
};

Ex61Report example61_series(const Ex61Config& config);

// ---------------------------------------------------------------- pipeline 2

// A large quantity presented at the deepest scale still representable:
// level 0 stores the exact integer, level 1 encloses ln(value), level 2
// encloses ln(ln(value)).
struct LogScale {
  int level = 0;
  mpz_class exact;
  Interval enc;
  std::string str() const;
};

struct Ex62SymbolicStep {
  int s = 0;
  mpz_class alpha;  // dim of the stage-s subalgebra (exact at every stage)
  LogScale beta;    // top degree of the stage-s subalgebra
  LogScale rhs;     // 2*alpha^2*(1+2*beta)^2, the scheduled exponent
  LogScale d_next;  // next generator degree 1+floor(e^{rhs})
  Cert cert = Cert::Unknown;  // ln(d_next) >= rhs
  std::string route;          // "numeric-log" | "floor-lemma" | "definitional"
  std::string note;
};

struct Ex62SymbolicReport {
  long d1 = 1;
  std::vector<Ex62SymbolicStep> steps;
  bool pass = false;
  std::string describe() const;
};

// Propagates (alpha_s, beta_s, d_{s+1}) through the schedule
// d_{s+1} = 1 + floor(e^{2 alpha_s^2 (1+2 beta_s)^2}) without materializing
// astronomically large degrees, certifying ln(d_{s+1}) >= 2 alpha_s^2
// (1+2 beta_s)^2 at each stage.
Ex62SymbolicReport example62_symbolic(long d1, int s_max);

struct Ex62WindowReport {
  int s = 0;                      // window between stage s and stage s+1
  long d_next = 0;                // degree of x_{s+1}
  long beta_next = 0;             // observed top degree at stage s+1
  bool e624_ok = false;           // beta_{s+1} == d_{s+1} + 2*beta_s exactly
  std::vector<long> window_dims;  // dim A_i for d_{s+1} <= i <= beta_{s+1}
  std::vector<long> convolution;  // profile_s convolved with itself
  bool dims_match_convolution = false;
  bool e623_ok = false;              // every window dim <= alpha_s^2
  bool unique_factorization = false;  // each window word has exactly one x_{s+1}
};

struct Ex62CustomReport {
  std::vector<long> schedule;
  std::vector<long> alpha;  // per stage
  std::vector<long> beta;
  std::vector<Ex62WindowReport> windows;
  HilbertSeries a_series;   // dim A_i
  HilbertSeries sa_series;  // i * dim A_{i-1}
  bool sa_rule_ok = false;  // the arity series follows that rule exactly
  mpq_class fitted_C = 0;   // smallest observed constant with sum <= C n ln n
  Cert e625_verdict = Cert::Unknown;  // re-check with the fitted constant
  long e625_witness = -1;
  bool center_trivial_at_cap = false;
  bool no_annihilating_pairs_at_cap = false;
  long structural_cap = 0;  // degree cap used for the two scans above
  std::string describe() const;
};

// Materializes the pattern algebra for an explicit strictly increasing
// schedule (at most four generators), enumerates stage subalgebras and the
// windows after each stage, and spot-checks the growth bound with a constant
// fitted from the data. Throws when the schedule makes windows overlap
// (d_{s+1} <= beta_s).
Ex62CustomReport example62_custom(const std::vector<long>& schedule, long horizon);

// Arity series with coeff_i = i * dim A_{i-1} (dimension-level model of the
// symmetric sequence built on a graded algebra).
HilbertSeries sa_series_of(const HilbertSeries& a, long horizon);

// ---------------------------------------------------------------- pipeline 3

struct Ex63Cancellation {
  int l = 0;
  long pass_bound = 0;  // cancellation holds for degrees < 2^l
  bool pass = false;
  long fail_bound = 0;  // and fails at exactly 2^l ...
  bool fail_at_bound = false;
  std::string fail_witness;  // ... with x_l itself as the witness
};

struct Ex63Report {
  long horizon = 0;
  bool dims_all_one = false;
  std::vector<Ex63Cancellation> cancellations;  // l = 0..5 (clipped to horizon)
  SaturationReport saturation;                  // on the full algebra
  std::vector<std::pair<int, SaturationReport>> quotient_saturations;
  bool base_torsionfree = false;
  std::vector<std::pair<int, bool>> quotient_torsionfree;
  GkReport gk;          // of the associated operad
  std::string fit;      // rational form of the operad series
  bool fit_ok = false;  // matches t/(1 - t)
  std::string describe() const;
};

// The commutative algebra on x_0, x_1, ... with deg x_i = 2^i and x_i^2 = 0:
// one basis word per degree (binary digits), sharp cancellation thresholds at
// the generator degrees, saturation via the generator tail, and a linear
// associated operad. Horizon must be a power of two <= 1024.
Ex63Report example63_pipeline(long horizon);

// The algebra itself and its quotients by the first i+1 generators (realized
// directly on the remaining generators).
AlgebraPtr ex63_algebra(long horizon, int first_gen = 0);

}  // namespace opal
