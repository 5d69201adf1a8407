#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tcgemm/kernels.hpp"
#include "tcgemm/tiled_matrix.hpp"

namespace tcgemm {

/// One tile multiply-accumulate: C(i,j) += A(i,l) * B(l,j).
struct GemmTask {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t l = 0;

  friend auto operator<=>(const GemmTask&, const GemmTask&) = default;
};

/// The SUMMA task DAG for C <- alpha*A*B + beta*C over tiled operands.
///
/// Tasks are implicit: every (i, j, l) with i < mt, j < nt, l < kt. The only
/// dependencies are the reduction chains (i,j,l-1) -> (i,j,l), so each C tile
/// has a totally ordered sequence of writers and distinct C tiles never
/// interact. beta scales C once, in the l = 0 task; later links in a chain
/// accumulate with beta = 1.
///
/// The graph refers to A, B and C; they must outlive it.
class TaskGraph {
 public:
  std::size_t mt() const noexcept { return mt_; }
  std::size_t nt() const noexcept { return nt_; }
  std::size_t kt() const noexcept { return kt_; }
  std::size_t nb() const noexcept { return nb_; }
  std::size_t size() const noexcept { return mt_ * nt_ * kt_; }
  const GemmScalars& scalars() const noexcept { return scalars_; }

  std::optional<GemmTask> predecessor(const GemmTask& t) const;
  std::optional<GemmTask> successor(const GemmTask& t) const;

  /// All tasks in sequential loop order: l outermost, then i, then j.
  std::vector<GemmTask> tasks() const;

  /// Runs one task in place on C.
  void run(const GemmTask& t) const;

  const TiledMatrix& a() const noexcept { return *a_; }
  const TiledMatrix& b() const noexcept { return *b_; }
  TiledMatrix& c() const noexcept { return *c_; }

 private:
  friend TaskGraph build_task_graph(const TiledMatrix&, const TiledMatrix&, TiledMatrix&,
                                    const GemmScalars&);
  TaskGraph(const TiledMatrix& a, const TiledMatrix& b, TiledMatrix& c, GemmScalars s);

  const TiledMatrix* a_;
  const TiledMatrix* b_;
  TiledMatrix* c_;
  GemmScalars scalars_;
  std::size_t mt_;
  std::size_t nt_;
  std::size_t kt_;
  std::size_t nb_;
};

/// Throws shape_mismatch when A is not mt x kt, B not kt x nt, C not mt x nt
/// tiles; tile_size_mismatch when the tile sizes differ.
TaskGraph build_task_graph(const TiledMatrix& a, const TiledMatrix& b, TiledMatrix& c,
                           const GemmScalars& scalars);

void execute_sequential(const TaskGraph& g);

struct ExecutionStats {
  std::vector<std::size_t> tasks_per_worker;
};

/// Dependency-driven execution on `workers` threads. Each worker owns a ready
/// deque seeded with the heads of the chains assigned to it round-robin; a
/// finished task's successor goes to the finishing worker's deque. Idle
/// workers steal from workers that have already started, so every worker that
/// was given a chain runs at least one task. Output is bitwise identical to
/// execute_sequential for every worker count.
ExecutionStats execute_parallel(const TaskGraph& g, std::size_t workers);

struct FlopReport {
  std::uint64_t flops_fp64 = 0;
  std::uint64_t flops_fp32 = 0;
  std::uint64_t tasks_fp64 = 0;
  std::uint64_t tasks_fp32 = 0;
};

/// Flops attributed to each task's operational precision (the C tile's).
FlopReport flop_report(const TaskGraph& g, const PrecisionMap& c_map, std::size_t nb);

}  // namespace tcgemm
