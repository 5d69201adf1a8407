#include "tcgemm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "tcgemm/bench.hpp"
#include "tcgemm/comm_sim.hpp"
#include "tcgemm/error.hpp"
#include "tcgemm/precision_map.hpp"
#include "tcgemm/task_graph.hpp"
#include "tcgemm/verify.hpp"

namespace tcgemm {
namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t hardware_threads() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << contents)) throw IoError("cannot write " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// M/N/K with --n as the square default.
struct Dims {
  std::size_t n = 256;
  std::optional<std::size_t> m;
  std::optional<std::size_t> k;
  std::size_t nb = 32;

  void add_to(CLI::App* app) {
    app->add_option("--n", n, "N (and M, K unless given)")->capture_default_str();
    app->add_option("--m", m, "rows of A and C");
    app->add_option("--k", k, "reduction dimension");
    app->add_option("--nb", nb, "tile size")->capture_default_str();
  }
  std::size_t M() const { return m.value_or(n); }
  std::size_t K() const { return k.value_or(n); }
};

struct GenMapArgs {
  std::size_t mt = 0, nt = 0;
  std::string ratio;
  std::uint64_t seed = 0;
  std::string out_path, heatmap_path, heatmap_format;
};

int run_gen_map(const GenMapArgs& a, std::ostream& out, std::ostream& err) {
  const PrecisionMap map = generate_ratio_map(a.mt, a.nt, RatioSpec::parse(a.ratio), a.seed);
  const std::string text = serialize_map(map);
  if (a.out_path.empty()) {
    out << text;
  } else {
    write_file(a.out_path, text);
  }
  if (!a.heatmap_path.empty()) {
    std::string fmt = a.heatmap_format;
    if (fmt.empty()) fmt = ends_with(a.heatmap_path, ".csv") ? "csv" : "pgm";
    write_file(a.heatmap_path,
               export_heatmap(map, fmt == "csv" ? HeatmapFormat::CSV : HeatmapFormat::PGM));
  }
  const MapStats s = map_stats(map);
  (a.out_path.empty() ? err : out)
      << "fp64_cells " << s.count_fp64 << "\nfp32_cells " << s.count_fp32
      << "\nfraction_fp64 " << s.fraction_fp64 << '\n';
  return kExitOk;
}

struct GemmArgs {
  Dims dims;
  std::string ratio;
  std::uint64_t seed = 0;
  std::size_t threads = hardware_threads();
  double alpha = 1.0, beta = 1.0;
};

int run_gemm(const GemmArgs& a, std::ostream& out) {
  const RatioSpec ratio = RatioSpec::parse(a.ratio);
  const std::size_t M = a.dims.M(), N = a.dims.n, K = a.dims.K(), nb = a.dims.nb;
  GemmProblem p = make_problem(M, N, K, nb, ratio, a.seed);
  const GemmScalars scalars{a.alpha, a.beta};
  TaskGraph g = build_task_graph(p.a, p.b, p.c, scalars);
  const auto t0 = std::chrono::steady_clock::now();
  execute_parallel(g, a.threads);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const DenseMatrix ref = reference_gemm_f64(p.a_orig, p.b_orig, p.c_orig, scalars, nb);
  const FlopReport f = flop_report(g, p.c.map(), nb);
  out << "config " << ratio.label() << '\n'
      << "tasks " << g.size() << '\n'
      << "elapsed_s " << elapsed << '\n'
      << "gflops " << 2.0 * M * N * K / elapsed / 1e9 << '\n'
      << "flops_fp64 " << f.flops_fp64 << '\n'
      << "flops_fp32 " << f.flops_fp32 << '\n'
      << "rel_fro_error " << relative_fro_error(to_dense_f64(p.c), ref) << '\n';
  return kExitOk;
}

int run_verify(const GemmArgs& a, std::ostream& out) {
  const RatioSpec ratio = RatioSpec::parse(a.ratio);
  const std::size_t M = a.dims.M(), N = a.dims.n, K = a.dims.K(), nb = a.dims.nb;
  GemmProblem p = make_problem(M, N, K, nb, ratio, a.seed);
  const GemmScalars scalars{a.alpha, a.beta};

  TiledMatrix c_seq = p.c;
  execute_sequential(build_task_graph(p.a, p.b, c_seq, scalars));
  TiledMatrix c_par = p.c;
  execute_parallel(build_task_graph(p.a, p.b, c_par, scalars), a.threads);
  const DenseMatrix ref = reference_gemm_f64(p.a_orig, p.b_orig, p.c_orig, scalars, nb);
  const DenseMatrix got = to_dense_f64(c_par);

  bool ok = true;
  auto check = [&](const char* name, bool pass) {
    out << "check " << name << ": " << (pass ? "PASS" : "FAIL") << '\n';
    ok = ok && pass;
  };
  auto exact_count = [&](const TiledMatrix& m) {
    return map_stats(m.map()).count_fp64 == fp64_cell_count(m.map().size(), ratio);
  };
  check("map_counts", exact_count(p.a) && exact_count(p.b) && exact_count(p.c));
  check("parallel_equals_sequential", bitwise_equal(c_seq, c_par));
  if (ratio.d_percent() == 100) check("oracle_bitwise", bitwise_equal(got, ref));
  const double err = relative_fro_error(got, ref);
  check("error_finite", std::isfinite(err));
  out << "rel_fro_error " << err << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

struct BenchArgs {
  Dims dims;
  std::vector<std::string> ratios;
  std::uint64_t seed = 0;
  std::size_t threads = hardware_threads();
  std::size_t reps = 3;
  bool no_error = false;
  std::string out_path;
};

int run_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig cfg;
  cfg.m = a.dims.M();
  cfg.n = a.dims.n;
  cfg.k = a.dims.K();
  cfg.nb = a.dims.nb;
  if (!a.ratios.empty()) {
    cfg.ratios.clear();
    for (const std::string& r : a.ratios) cfg.ratios.push_back(RatioSpec::parse(r));
  }
  cfg.seed = a.seed;
  cfg.workers = a.threads;
  cfg.repetitions = a.reps;
  cfg.measure_error = !a.no_error;
  const std::string csv = bench_csv(bench_run(cfg));
  if (a.out_path.empty()) {
    out << csv;
  } else {
    write_file(a.out_path, csv);
  }
  return kExitOk;
}

struct SimArgs {
  std::size_t mt = 0, nt = 0, kt = 0, nb = 0;
  std::string grid;
  std::size_t ranks = 0;
  std::string ratio = "100:0";
  std::optional<std::uint64_t> seed;
  std::string a_map_path, b_map_path, out_path;
  bool rebroadcast = false;
};

int run_sim(const SimArgs& a, std::ostream& out) {
  ProcessGrid grid = !a.grid.empty() ? ProcessGrid::parse(a.grid)
                     : a.ranks > 0   ? default_grid(a.ranks)
                                     : ProcessGrid(1, 1);
  const RatioSpec ratio = RatioSpec::parse(a.ratio);
  const bool need_seed = a.a_map_path.empty() || a.b_map_path.empty();
  if (need_seed && !a.seed) {
    throw CLI::RequiredError("--seed is required unless both --a-map and --b-map are given");
  }
  const MatrixSeeds seeds = map_seeds(a.seed.value_or(0));
  const PrecisionMap a_map = a.a_map_path.empty()
                                 ? generate_ratio_map(a.mt, a.kt, ratio, seeds.a)
                                 : parse_map(read_file(a.a_map_path));
  const PrecisionMap b_map = a.b_map_path.empty()
                                 ? generate_ratio_map(a.kt, a.nt, ratio, seeds.b)
                                 : parse_map(read_file(a.b_map_path));
  const CommReport report = simulate_summa(a.mt, a.nt, a.kt, grid, a_map, b_map, a.nb,
                                           SimOptions{a.rebroadcast});
  const std::string csv = comm_report_csv(report);
  if (a.out_path.empty()) {
    out << csv;
  } else {
    write_file(a.out_path, csv);
    out << "grid " << grid.p << 'x' << grid.q << '\n'
        << "messages " << report.messages << '\n'
        << "bytes_total " << report.bytes_total << '\n'
        << "bytes_fp64 " << report.bytes_fp64 << '\n'
        << "bytes_fp32 " << report.bytes_fp32 << '\n';
  }
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tile-centric mixed-precision GEMM engine", "tcgemm"};
  app.require_subcommand(1);

  GenMapArgs gm;
  auto* gen = app.add_subcommand("gen-map", "generate a random aD:bS tile precision map");
  gen->add_option("--mt", gm.mt, "tile rows")->required()->check(CLI::PositiveNumber);
  gen->add_option("--nt", gm.nt, "tile columns")->required()->check(CLI::PositiveNumber);
  gen->add_option("--ratio", gm.ratio, "a:b with a+b=100")->required();
  gen->add_option("--seed", gm.seed, "RNG seed")->required();
  gen->add_option("--out", gm.out_path, "map file (stdout if omitted)");
  gen->add_option("--heatmap", gm.heatmap_path, "heatmap file (.csv or .pgm)");
  gen->add_option("--heatmap-format", gm.heatmap_format, "csv or pgm")
      ->check(CLI::IsMember({"csv", "pgm"}));

  GemmArgs ga;
  auto* gemm = app.add_subcommand("gemm", "run one configuration and report error and timing");
  GemmArgs va;
  auto* verify = app.add_subcommand("verify", "check determinism and the FP64 oracle");
  for (auto [cmd, args] : {std::pair{gemm, &ga}, std::pair{verify, &va}}) {
    args->dims.add_to(cmd);
    cmd->add_option("--ratio", args->ratio, "a:b with a+b=100")->required();
    cmd->add_option("--seed", args->seed, "base RNG seed")->required();
    cmd->add_option("--threads", args->threads, "worker threads")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--alpha", args->alpha)->capture_default_str();
    cmd->add_option("--beta", args->beta)->capture_default_str();
  }

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "sweep ratios and emit CSV");
  ba.dims.add_to(bench);
  bench->add_option("--ratios", ba.ratios, "ratios to sweep (default 100:0,80:20,50:50,20:80,0:100)")
      ->delimiter(',');
  bench->add_option("--seed", ba.seed, "base RNG seed")->required();
  bench->add_option("--threads", ba.threads)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--reps", ba.reps, "timed repetitions (best is kept)")
      ->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_flag("--no-error", ba.no_error, "skip the FP64 oracle");
  bench->add_option("--out", ba.out_path, "CSV file (stdout if omitted)");

  SimArgs sa;
  auto* sim = app.add_subcommand("sim", "simulate SUMMA communication on a virtual process grid");
  sim->add_option("--mt", sa.mt)->required()->check(CLI::PositiveNumber);
  sim->add_option("--nt", sa.nt)->required()->check(CLI::PositiveNumber);
  sim->add_option("--kt", sa.kt)->required()->check(CLI::PositiveNumber);
  sim->add_option("--nb", sa.nb)->required()->check(CLI::PositiveNumber);
  auto* grid_opt = sim->add_option("--grid", sa.grid, "process grid PxQ");
  sim->add_option("--ranks", sa.ranks, "rank count; grid chosen as square as possible")
      ->excludes(grid_opt);
  sim->add_option("--ratio", sa.ratio)->capture_default_str();
  sim->add_option("--seed", sa.seed, "base RNG seed for the A/B maps");
  sim->add_option("--a-map", sa.a_map_path, "map file for A");
  sim->add_option("--b-map", sa.b_map_path, "map file for B");
  sim->add_flag("--rebroadcast-per-iter", sa.rebroadcast, "re-ship tiles in every iteration");
  sim->add_option("--out", sa.out_path, "CSV file (stdout if omitted)");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return run_gen_map(gm, out, err);
    if (gemm->parsed()) return run_gemm(ga, out);
    if (verify->parsed()) return run_verify(va, out);
    if (bench->parsed()) return run_bench(ba, out);
    return run_sim(sa, out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace tcgemm
