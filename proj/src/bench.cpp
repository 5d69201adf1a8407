#include "tcgemm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <optional>

#include "tcgemm/error.hpp"
#include "tcgemm/verify.hpp"

namespace tcgemm {

std::vector<BenchResult> bench_run(const BenchConfig& config) {
  if (config.repetitions == 0 || config.workers == 0) {
    throw Error(Errc::invalid_argument, "repetitions and workers must be positive");
  }
  std::vector<RatioSpec> ratios = config.ratios;
  const RatioSpec baseline(100, 0);
  if (std::find(ratios.begin(), ratios.end(), baseline) == ratios.end()) {
    ratios.insert(ratios.begin(), baseline);
  }

  const double flops = 2.0 * static_cast<double>(config.m) * static_cast<double>(config.n) *
                       static_cast<double>(config.k);
  std::optional<DenseMatrix> reference;
  std::vector<BenchResult> results;

  for (const RatioSpec& ratio : ratios) {
    GemmProblem problem = make_problem(config.m, config.n, config.k, config.nb, ratio,
                                       config.seed, config.measure_error && !reference);
    if (config.measure_error && !reference) {
      reference = reference_gemm_f64(problem.a_orig, problem.b_orig, problem.c_orig,
                                     config.scalars, config.nb);
    }

    BenchResult r;
    r.label = ratio.label();
    r.elapsed_seconds = std::numeric_limits<double>::infinity();
    std::optional<TiledMatrix> c_out;
    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
      TiledMatrix c = problem.c;
      TaskGraph g = build_task_graph(problem.a, problem.b, c, config.scalars);
      const auto t0 = std::chrono::steady_clock::now();
      execute_parallel(g, config.workers);
      const auto t1 = std::chrono::steady_clock::now();
      r.elapsed_seconds = std::min(r.elapsed_seconds, std::chrono::duration<double>(t1 - t0).count());
      if (rep + 1 == config.repetitions) {
        r.flops = flop_report(g, c.map(), config.nb);
        c_out.emplace(std::move(c));
      }
    }
    r.gflops_effective = flops / r.elapsed_seconds / 1e9;
    r.rel_fro_error = config.measure_error ? relative_fro_error(to_dense_f64(*c_out), *reference)
                                           : std::numeric_limits<double>::quiet_NaN();
    results.push_back(std::move(r));
  }

  double base_time = 0.0;
  for (const BenchResult& r : results) {
    if (r.label == baseline.label()) base_time = r.elapsed_seconds;
  }
  for (BenchResult& r : results) {
    r.speedup_vs_alldp = r.label == baseline.label() ? 1.0 : base_time / r.elapsed_seconds;
  }
  return results;
}

std::string bench_csv(const std::vector<BenchResult>& results) {
  std::string out = "label,elapsed_s,gflops,speedup,rel_err\n";
  char line[256];
  for (const BenchResult& r : results) {
    std::snprintf(line, sizeof line, "%s,%.6f,%.3f,%.4f,%.6e\n", r.label.c_str(),
                  r.elapsed_seconds, r.gflops_effective, r.speedup_vs_alldp, r.rel_fro_error);
    out += line;
  }
  return out;
}

}  // namespace tcgemm
