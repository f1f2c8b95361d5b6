#include "opal/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace opal {

HilbertSeries HilbertSeries::from_dense(std::vector<mpz_class> c) {
  for (const auto& v : c)
    if (v < 0) throw Error("series coefficients must be non-negative");
  HilbertSeries h;
  h.dense = std::move(c);
  return h;
}

HilbertSeries HilbertSeries::from_sparse(std::map<mpz_class, mpz_class> c) {
  for (const auto& [d, v] : c) {
    if (d < 0) throw Error("series degrees must be non-negative");
    if (v < 0) throw Error("series coefficients must be non-negative");
  }
  HilbertSeries h;
  h.sparse = std::move(c);
  h.is_sparse = true;
  return h;
}

long HilbertSeries::horizon() const {
  if (is_sparse) throw Error("horizon() requires a dense series");
  return static_cast<long>(dense.size()) - 1;
}

const mpz_class& HilbertSeries::coeff(long d) const {
  static const mpz_class zero = 0;
  if (is_sparse) {
    auto it = sparse.find(mpz_class(d));
    return it == sparse.end() ? zero : it->second;
  }
  if (d < 0 || d >= static_cast<long>(dense.size())) return zero;
  return dense[static_cast<size_t>(d)];
}

mpz_class HilbertSeries::partial_sum(long n) const {
  mpz_class s = 0;
  if (is_sparse) {
    for (const auto& [d, v] : sparse) {
      if (d > n) break;
      s += v;
    }
    return s;
  }
  long top = std::min<long>(n, horizon());
  for (long d = 0; d <= top; ++d) s += dense[static_cast<size_t>(d)];
  return s;
}

std::vector<mpz_class> HilbertSeries::partial_sums() const {
  if (is_sparse) throw Error("partial_sums() requires a dense series");
  std::vector<mpz_class> out(dense.size());
  mpz_class s = 0;
  for (size_t d = 0; d < dense.size(); ++d) {
    s += dense[d];
    out[d] = s;
  }
  return out;
}

// ------------------------------------------------------------ GK estimation

namespace {

// ln of a positive integer, rounded to double through a 128-bit enclosure so
// the value is independent of platform libm quirks.
double ln_of_mpz(const mpz_class& v) {
  Interval iv = iv_log(iv_from_z(v, 128), 128);
  return iv.mid();
}

double raw_estimate(const HilbertSeries& h, long n) {
  mpz_class s = h.partial_sum(n);
  if (s <= 0) return 0.0;
  if (s == 1) return 0.0;
  return ln_of_mpz(s) / ln_of_mpz(mpz_class(n));
}

}  // namespace

GkReport gk_estimate(const HilbertSeries& h, long n) {
  if (h.is_sparse) throw Error("gk_estimate requires a dense series");
  if (n < 4) throw Error("gk_estimate requires n >= 4");
  if (n > h.horizon()) throw Error("gk_estimate: n beyond stored horizon");
  GkReport r;
  for (long p = n; p >= 8; p /= 2) r.sequence.push_back({p, raw_estimate(h, p)});
  std::reverse(r.sequence.begin(), r.sequence.end());

  mpz_class s_full = h.partial_sum(n);
  if (s_full == 0) {
    r.zero_sum = true;
    return r;
  }
  r.raw = raw_estimate(h, n);
  long half = n / 2;
  mpz_class s_half = h.partial_sum(half);
  if (s_half <= 1) {
    // Not enough early mass for a slope; report the raw value.
    r.extrapolated = r.raw;
    r.headline = r.raw;
    return r;
  }
  const double ln2 = std::log(2.0);
  double s1 = (ln_of_mpz(s_full) - ln_of_mpz(s_half)) / ln2;
  mpz_class s_quarter = h.partial_sum(n / 4);
  double est = s1;
  if (s_quarter >= 1) {
    // One Richardson step in 1/n on the dyadic slopes.
    double s2 = (ln_of_mpz(s_half) - ln_of_mpz(s_quarter)) / ln2;
    est = 2 * s1 - s2;
  }
  r.extrapolated = est;
  r.c_hat = est - r.raw;
  r.used_extrapolation = std::abs(r.c_hat) > kGkSlopeThreshold;
  r.headline = r.used_extrapolation ? r.extrapolated : r.raw;
  return r;
}

std::string GrowthReport::describe() const {
  std::ostringstream os;
  switch (cls) {
    case GrowthClass::FiniteDimensional:
      os << "finite-dimensional (zero tail)";
      break;
    case GrowthClass::Gk1:
      os << "linear growth range (estimate " << headline << ")";
      break;
    case GrowthClass::GapFlag:
      os << "flagged: estimate " << headline
         << " sits in the excluded band between linear and quadratic growth";
      break;
    case GrowthClass::GkD:
      os << "polynomial growth of degree about " << d << " (estimate " << headline << ")";
      break;
  }
  return os.str();
}

GrowthReport classify_growth(const HilbertSeries& h) {
  if (h.is_sparse) throw Error("classify_growth requires a dense series");
  long n = h.horizon();
  if (n < 100) throw Error("classify_growth requires horizon >= 100");
  GrowthReport rep;
  rep.gk = gk_estimate(h, n);
  rep.headline = rep.gk.headline;

  bool tail_zero = true;
  for (long d = n / 2; d <= n; ++d)
    if (h.coeff(d) != 0) {
      tail_zero = false;
      break;
    }
  auto sums = h.partial_sums();
  for (long p = n / 2; p <= n; ++p) {
    double v = mpq_class(mpq_class(sums[static_cast<size_t>(p)]) / (mpq_class(p) * p)).get_d();
    rep.tail_sum_over_n2 = std::max(rep.tail_sum_over_n2, v);
  }

  if (tail_zero) {
    rep.cls = GrowthClass::FiniteDimensional;
    return rep;
  }
  if (rep.headline <= kGrowthGk1Band) {
    rep.cls = GrowthClass::Gk1;
  } else if (rep.headline < kGrowthGapBand) {
    rep.cls = GrowthClass::GapFlag;
  } else {
    rep.cls = GrowthClass::GkD;
    rep.d = static_cast<int>(std::llround(rep.headline));
  }
  return rep;
}

// ------------------------------------------------------------ multiplicity

MultiplicityReport multiplicity(const HilbertSeries& h) {
  if (h.is_sparse) throw Error("multiplicity requires a dense series");
  long n = h.horizon();
  if (n < 8) throw Error("multiplicity requires horizon >= 8");
  MultiplicityReport rep;
  rep.window_start = n / 2;

  mpz_class tail_max = 0;
  for (long d = rep.window_start; d <= n; ++d) tail_max = std::max(tail_max, h.coeff(d));
  if (tail_max == 0) {
    rep.finite = true;
    rep.value = 0;
    return rep;
  }
  // Growth detection: a strictly larger maximum in the most recent quarter
  // window than in the one before it means the tail has not stabilised.
  mpz_class q_prev = 0, q_last = 0;
  for (long d = rep.window_start; d < n - n / 4; ++d) q_prev = std::max(q_prev, h.coeff(d));
  for (long d = n - n / 4; d <= n; ++d) q_last = std::max(q_last, h.coeff(d));
  if (q_last > q_prev) {
    rep.finite = false;
    return rep;
  }
  rep.value = tail_max;
  return rep;
}

// ------------------------------------------------------------ rational form

namespace {

std::string poly_str(const std::vector<mpq_class>& p) {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    mpq_class c = p[k];
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    bool unit = (c == 1) && k > 0;
    if (!unit) os << c.get_str();
    if (k > 0) {
      if (!unit) os << "*";
      os << "t";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

std::string RationalForm::str() const {
  std::string n = poly_str(num), d = poly_str(den);
  if (d == "1") return n;
  bool n_simple = num.size() <= 1 || std::count_if(num.begin(), num.end(), [](const mpq_class& c) {
                                       return c != 0;
                                     }) <= 1;
  std::string left = n_simple ? n : "(" + n + ")";
  return left + "/(" + d + ")";
}

std::vector<mpq_class> RationalForm::expand(long horizon) const {
  if (den.empty() || den[0] != 1) throw Error("rational form: denominator must start at 1");
  std::vector<mpq_class> s(static_cast<size_t>(horizon) + 1, 0);
  for (long k = 0; k <= horizon; ++k) {
    mpq_class acc = k < static_cast<long>(num.size()) ? num[static_cast<size_t>(k)] : mpq_class(0);
    for (size_t i = 1; i < den.size() && static_cast<long>(i) <= k; ++i)
      acc -= den[i] * s[static_cast<size_t>(k - static_cast<long>(i))];
    s[static_cast<size_t>(k)] = acc;
  }
  return s;
}

std::optional<RationalForm> fit_rational(const HilbertSeries& h, int max_den_deg) {
  if (h.is_sparse) throw Error("fit_rational requires a dense series");
  if (max_den_deg < 1) throw Error("fit_rational: max_den_deg must be >= 1");
  long N = h.horizon() + 1;  // number of known coefficients
  if (N < 2L * max_den_deg) throw Error("fit_rational: horizon too small for requested degree");

  std::vector<mpq_class> s(static_cast<size_t>(N));
  for (long d = 0; d < N; ++d) s[static_cast<size_t>(d)] = mpq_class(h.coeff(d));

  // Berlekamp-Massey over Q: C is the connection polynomial, B the previous
  // candidate, b the discrepancy at the last length change.
  std::vector<mpq_class> C{1}, B{1};
  long L = 0, m = 1;
  mpq_class b = 1;
  for (long n = 0; n < N; ++n) {
    mpq_class delta = s[static_cast<size_t>(n)];
    for (long i = 1; i <= L; ++i)
      delta += C[static_cast<size_t>(i)] * s[static_cast<size_t>(n - i)];
    if (delta == 0) {
      ++m;
      continue;
    }
    if (2 * L <= n) {
      std::vector<mpq_class> T = C;
      mpq_class f = delta / b;
      if (static_cast<long>(C.size()) < static_cast<long>(B.size()) + m)
        C.resize(B.size() + static_cast<size_t>(m), 0);
      for (size_t i = 0; i < B.size(); ++i) C[i + static_cast<size_t>(m)] -= f * B[i];
      L = n + 1 - L;
      B = std::move(T);
      b = delta;
      m = 1;
    } else {
      mpq_class f = delta / b;
      if (static_cast<long>(C.size()) < static_cast<long>(B.size()) + m)
        C.resize(B.size() + static_cast<size_t>(m), 0);
      for (size_t i = 0; i < B.size(); ++i) C[i + static_cast<size_t>(m)] -= f * B[i];
      ++m;
    }
  }
  if (L > max_den_deg) return std::nullopt;
  C.resize(static_cast<size_t>(L) + 1, 0);

  // Numerator = series * denominator, truncated where the recurrence kicks in.
  std::vector<mpq_class> num(static_cast<size_t>(N), 0);
  long last_nonzero = -1;
  for (long k = 0; k < N; ++k) {
    mpq_class acc = 0;
    for (long i = 0; i <= L && i <= k; ++i)
      acc += C[static_cast<size_t>(i)] * s[static_cast<size_t>(k - i)];
    num[static_cast<size_t>(k)] = acc;
    if (acc != 0) last_nonzero = k;
  }
  // The tail must have stabilised well inside the horizon; otherwise the fit
  // is an artifact of running out of data.
  if (last_nonzero > (N - 1) / 2) return std::nullopt;
  num.resize(static_cast<size_t>(std::max<long>(last_nonzero + 1, 1)), 0);

  RationalForm rf;
  rf.num = std::move(num);
  rf.den = std::move(C);
  auto re = rf.expand(N - 1);
  for (long k = 0; k < N; ++k)
    if (re[static_cast<size_t>(k)] != s[static_cast<size_t>(k)]) return std::nullopt;
  return rf;
}

// ------------------------------------------------------------ bound checks

std::string BoundExpr::str() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](const mpq_class& c, const std::string& body) {
    if (c == 0) return;
    if (!first) os << " + ";
    if (body.empty()) {
      os << c.get_str();
    } else if (c == 1) {
      os << body;
    } else {
      os << c.get_str() << "*" << body;
    }
    first = false;
  };
  term(c0, "");
  term(c1, "n");
  term(c2, "(n+1)*ln(n+1)");
  term(c3, "n*ln(n)");
  if (first) os << "0";
  return os.str();
}

Interval BoundExpr::eval(long n, mpfr_prec_t prec) const {
  Interval acc = iv_from_q(c0, prec);
  if (c1 != 0) acc = iv_add(acc, iv_mul(iv_from_q(c1, prec), iv_from_long(n, prec), prec), prec);
  if (c2 != 0) {
    Interval np1 = iv_from_long(n + 1, prec);
    Interval t = iv_mul(np1, iv_log(np1, prec), prec);
    acc = iv_add(acc, iv_mul(iv_from_q(c2, prec), t, prec), prec);
  }
  if (c3 != 0 && n >= 1) {
    Interval nn = iv_from_long(n, prec);
    Interval t = iv_mul(nn, iv_log(nn, prec), prec);
    acc = iv_add(acc, iv_mul(iv_from_q(c3, prec), t, prec), prec);
  }
  return acc;
}

namespace {

// Decides partial_sum <= bound(n) with adaptive precision; exact when the
// transcendental terms vanish.
Cert decide_point(const mpz_class& psum, const BoundExpr& b, long n) {
  return refine_cert([&](mpfr_prec_t prec) { return z_le_iv(psum, b.eval(n, prec)); });
}

BoundCheckResult run_bound_check(const HilbertSeries& h, const BoundExpr& b, long lo, long hi,
                                 bool parallel) {
  if (h.is_sparse) throw Error("bound check requires a dense series");
  if (lo < 0 || hi > h.horizon() || lo > hi) throw Error("bound check: bad range");
  auto sums = h.partial_sums();
  long count = hi - lo + 1;
  std::vector<signed char> verdicts(static_cast<size_t>(count), 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
#endif
  for (long idx = 0; idx < count; ++idx) {
    long n = lo + idx;
    Cert c = decide_point(sums[static_cast<size_t>(n)], b, n);
    verdicts[static_cast<size_t>(idx)] =
        c == Cert::True ? 1 : (c == Cert::False ? -1 : 0);
  }
  (void)parallel;

  BoundCheckResult res;
  for (long idx = 0; idx < count; ++idx) {
    if (verdicts[static_cast<size_t>(idx)] == -1) {
      res.verdict = Cert::False;
      res.witness = lo + idx;
      return res;
    }
  }
  for (long idx = 0; idx < count; ++idx) {
    if (verdicts[static_cast<size_t>(idx)] == 0) {
      res.verdict = Cert::Unknown;
      res.witness = lo + idx;
      return res;
    }
  }
  res.verdict = Cert::True;
  return res;
}

}  // namespace

BoundCheckResult series_bound_check(const HilbertSeries& h, const BoundExpr& b, long lo, long hi) {
  return run_bound_check(h, b, lo, hi, true);
}

BoundCheckResult series_bound_check_serial(const HilbertSeries& h, const BoundExpr& b, long lo,
                                           long hi) {
  return run_bound_check(h, b, lo, hi, false);
}

}  // namespace opal
