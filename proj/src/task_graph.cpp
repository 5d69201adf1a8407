#include "tcgemm/task_graph.hpp"

#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "tcgemm/error.hpp"

namespace tcgemm {

TaskGraph::TaskGraph(const TiledMatrix& a, const TiledMatrix& b, TiledMatrix& c, GemmScalars s)
    : a_(&a), b_(&b), c_(&c), scalars_(s), mt_(c.mt()), nt_(c.nt()), kt_(a.nt()), nb_(c.nb()) {}

TaskGraph build_task_graph(const TiledMatrix& a, const TiledMatrix& b, TiledMatrix& c,
                           const GemmScalars& scalars) {
  if (a.nb() != b.nb() || a.nb() != c.nb()) {
    throw Error(Errc::tile_size_mismatch, "A, B and C must share one tile size");
  }
  if (a.nt() != b.mt() || a.mt() != c.mt() || b.nt() != c.nt()) {
    auto shape = [](const TiledMatrix& m) {
      return std::to_string(m.mt()) + "x" + std::to_string(m.nt());
    };
    throw Error(Errc::shape_mismatch, "tile grids do not conform: A " + shape(a) + ", B " +
                                          shape(b) + ", C " + shape(c));
  }
  return TaskGraph(a, b, c, scalars);
}

std::optional<GemmTask> TaskGraph::predecessor(const GemmTask& t) const {
  if (t.l == 0) return std::nullopt;
  return GemmTask{t.i, t.j, t.l - 1};
}

std::optional<GemmTask> TaskGraph::successor(const GemmTask& t) const {
  if (t.l + 1 >= kt_) return std::nullopt;
  return GemmTask{t.i, t.j, t.l + 1};
}

std::vector<GemmTask> TaskGraph::tasks() const {
  std::vector<GemmTask> out;
  out.reserve(size());
  for (std::size_t l = 0; l < kt_; ++l)
    for (std::size_t i = 0; i < mt_; ++i)
      for (std::size_t j = 0; j < nt_; ++j) out.push_back({i, j, l});
  return out;
}

void TaskGraph::run(const GemmTask& t) const {
  GemmScalars s = scalars_;
  if (t.l > 0) s.beta = 1.0;
  mixed_gemm_task(s, a_->tile({t.i, t.l}), b_->tile({t.l, t.j}), c_->tile({t.i, t.j}));
}

void execute_sequential(const TaskGraph& g) {
  for (std::size_t l = 0; l < g.kt(); ++l)
    for (std::size_t i = 0; i < g.mt(); ++i)
      for (std::size_t j = 0; j < g.nt(); ++j) g.run({i, j, l});
}

namespace {

class ChainScheduler {
 public:
  ChainScheduler(const TaskGraph& g, std::size_t workers)
      : graph_(g), ready_(workers), started_(workers, false), executed_(workers, 0),
        remaining_(g.size()) {
    std::size_t chain = 0;
    for (std::size_t i = 0; i < g.mt(); ++i)
      for (std::size_t j = 0; j < g.nt(); ++j) ready_[chain++ % workers].push_back({i, j, 0});
  }

  void work(std::size_t w) {
    std::unique_lock lock(mutex_);
    while (true) {
      std::optional<GemmTask> task;
      cv_.wait(lock, [&] {
        if (remaining_ == 0 || failure_) return true;
        task = take(w);
        return task.has_value();
      });
      if (!task) break;
      started_[w] = true;

      lock.unlock();
      try {
        graph_.run(*task);
      } catch (...) {
        lock.lock();
        if (!failure_) failure_ = std::current_exception();
        cv_.notify_all();
        return;
      }
      lock.lock();

      ++executed_[w];
      --remaining_;
      if (auto next = graph_.successor(*task)) ready_[w].push_back(*next);
      cv_.notify_all();
    }
  }

  void rethrow_if_failed() const {
    if (failure_) std::rethrow_exception(failure_);
  }

  std::vector<std::size_t> executed() const { return executed_; }

 private:
  // Caller holds mutex_. Own work LIFO (keeps a chain hot), steals FIFO.
  std::optional<GemmTask> take(std::size_t w) {
    if (!ready_[w].empty()) {
      GemmTask t = ready_[w].back();
      ready_[w].pop_back();
      return t;
    }
    const std::size_t n = ready_.size();
    for (std::size_t k = 1; k < n; ++k) {
      const std::size_t v = (w + k) % n;
      if (started_[v] && !ready_[v].empty()) {
        GemmTask t = ready_[v].front();
        ready_[v].pop_front();
        return t;
      }
    }
    return std::nullopt;
  }

  const TaskGraph& graph_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::vector<std::deque<GemmTask>> ready_;
  std::vector<bool> started_;
  std::vector<std::size_t> executed_;
  std::size_t remaining_;
  std::exception_ptr failure_;
};

}  // namespace

ExecutionStats execute_parallel(const TaskGraph& g, std::size_t workers) {
  if (workers == 0) throw Error(Errc::invalid_argument, "execute_parallel needs at least one worker");
  ChainScheduler scheduler(g, workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back([&scheduler, w] { scheduler.work(w); });
  }
  scheduler.rethrow_if_failed();
  return {scheduler.executed()};
}

FlopReport flop_report(const TaskGraph& g, const PrecisionMap& c_map, std::size_t nb) {
  if (c_map.mt() != g.mt() || c_map.nt() != g.nt()) {
    throw Error(Errc::map_shape_mismatch, "C map does not match the task graph");
  }
  const MapStats stats = map_stats(c_map);
  const std::uint64_t per_task = 2ull * nb * nb * nb;
  FlopReport r;
  r.tasks_fp64 = static_cast<std::uint64_t>(g.kt()) * stats.count_fp64;
  r.tasks_fp32 = static_cast<std::uint64_t>(g.kt()) * stats.count_fp32;
  r.flops_fp64 = per_task * r.tasks_fp64;
  r.flops_fp32 = per_task * r.tasks_fp32;
  return r;
}

}  // namespace tcgemm
