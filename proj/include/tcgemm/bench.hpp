#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tcgemm/kernels.hpp"
#include "tcgemm/precision_map.hpp"
#include "tcgemm/task_graph.hpp"

namespace tcgemm {

struct BenchConfig {
  std::size_t m = 1024;
  std::size_t n = 1024;
  std::size_t k = 1024;
  std::size_t nb = 128;
  std::vector<RatioSpec> ratios = standard_ratios();
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::size_t repetitions = 3;
  GemmScalars scalars{1.0, 1.0};
  /// Skip the FP64 oracle (rel_fro_error is then NaN).
  bool measure_error = true;
};

struct BenchResult {
  std::string label;
  double elapsed_seconds = 0.0;
  double gflops_effective = 0.0;
  double speedup_vs_alldp = 0.0;
  double rel_fro_error = 0.0;
  FlopReport flops;
};

/// Runs every ratio in config.ratios (100D:0S is prepended when absent) on
/// the same FP64 data, keeping the best wall time over the repetitions.
/// Gflop/s counts 2*M*N*K for every configuration.
std::vector<BenchResult> bench_run(const BenchConfig& config);

/// Columns: label,elapsed_s,gflops,speedup,rel_err.
std::string bench_csv(const std::vector<BenchResult>& results);

}  // namespace tcgemm
