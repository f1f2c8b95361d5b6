// Benchmark: the OpenMP axiom checker and the interval bound sweep against
// their serial reference twins. Each row reports best-of-N wall times and the
// speedup; the run fails (exit 1) if a parallel result ever disagrees with
// the serial one, so the benchmark doubles as a consistency check.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "opal/families.hpp"
#include "opal/field.hpp"
#include "opal/operad.hpp"
#include "opal/series.hpp"

namespace {

using namespace opal;
using Clock = std::chrono::steady_clock;

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

struct Row {
  std::string name;
  double serial = 0, parallel = 0;
  bool agree = false;
};

Row bench_axioms(const std::string& name, const OperadPtr& P, int horizon, int reps) {
  Row row{name, 0, 0, false};
  AxiomReport rs, rp;
  row.serial = best_of(reps, [&] { rs = check_axioms_serial(*P, horizon); });
  row.parallel = best_of(reps, [&] { rp = check_axioms(*P, horizon); });
  row.agree = rs.pass == rp.pass && rs.checked == rp.checked;
  return row;
}

Row bench_bound(const std::string& name, const HilbertSeries& h, const BoundExpr& b, long lo,
                long hi, int reps) {
  Row row{name, 0, 0, false};
  BoundCheckResult rs, rp;
  row.serial = best_of(reps, [&] { rs = series_bound_check_serial(h, b, lo, hi); });
  row.parallel = best_of(reps, [&] { rp = series_bound_check(h, b, lo, hi); });
  row.agree = rs.verdict == rp.verdict && rs.witness == rp.witness;
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opal-bench: parallel kernels vs their serial references"};
  int reps = 3;
  int threads = 0;
  app.add_option("--reps", reps, "repetitions per measurement (best is kept)")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "worker threads (0 = library default)");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP; both columns run serially)\n");
#endif

  auto Q = Field::rationals();
  std::vector<Row> rows;

  rows.push_back(bench_axioms("axioms com, horizon 12", make_com(Q, 12), 12, reps));
  rows.push_back(bench_axioms("axioms lin_e(z4), horizon 9",
                              make_lin_e(BDesc::zero_products(Q, 4), 9), 9, reps));
  rows.push_back(bench_axioms(
      "axioms lin_e(z5) + lin_o(z5), horizon 8",
      direct_sum(make_lin_e(BDesc::zero_products(Q, 5), 8),
                 make_lin_o(BDesc::zero_products(Q, 5), 8)),
      8, reps));

  const long N = 200000;
  std::vector<mpz_class> ones(N + 1, 1);
  HilbertSeries flat = HilbertSeries::from_dense(std::move(ones));
  BoundExpr bound;
  bound.c0 = 2;
  bound.c2 = 1;  // 2 + (n+1)ln(n+1) dominates the partial sums of the flat profile
  rows.push_back(bench_bound("bound sweep, flat profile, 2*10^5 points", flat, bound, 0, N, reps));

  std::vector<mpz_class> ramp(N + 1);
  for (long n = 0; n <= N; ++n) ramp[n] = n + 1;
  HilbertSeries grow = HilbertSeries::from_dense(std::move(ramp));
  rows.push_back(
      bench_bound("bound sweep, ramp profile (fails mid-range)", grow, bound, 0, N, reps));

  std::printf("%-44s %12s %12s %9s %7s\n", "workload", "serial (ms)", "parallel (ms)", "speedup",
              "agree");
  bool all_agree = true;
  for (const auto& r : rows) {
    all_agree = all_agree && r.agree;
    std::printf("%-44s %12.2f %12.2f %8.2fx %7s\n", r.name.c_str(), r.serial * 1e3,
                r.parallel * 1e3, r.serial / r.parallel, r.agree ? "yes" : "NO");
  }
  std::printf("%s\n", all_agree ? "all parallel results match the serial references"
                                : "MISMATCH between parallel and serial kernels");
  return all_agree ? 0 : 1;
}
