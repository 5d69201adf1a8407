#include <doctest.h>

#include <algorithm>
#include <set>

#include "tcgemm/error.hpp"
#include "tcgemm/rng.hpp"
#include "tcgemm/task_graph.hpp"
#include "tcgemm/verify.hpp"

using namespace tcgemm;

namespace {

struct Operands {
  TiledMatrix a, b, c;
};

Operands random_operands(std::size_t mt, std::size_t nt, std::size_t kt, std::size_t nb,
                         const RatioSpec& ratio, std::uint64_t seed) {
  const MatrixSeeds s = map_seeds(seed);
  Operands o{TiledMatrix(mt * nb, kt * nb, nb, generate_ratio_map(mt, kt, ratio, s.a)),
             TiledMatrix(kt * nb, nt * nb, nb, generate_ratio_map(kt, nt, ratio, s.b)),
             TiledMatrix(mt * nb, nt * nb, nb, generate_ratio_map(mt, nt, ratio, s.c))};
  fill_random(o.a, seed + 10);
  fill_random(o.b, seed + 11);
  fill_random(o.c, seed + 12);
  return o;
}

}  // namespace

TEST_CASE("graph shape") {
  Operands o = random_operands(2, 2, 2, 2, RatioSpec(100, 0), 1);
  const TaskGraph g = build_task_graph(o.a, o.b, o.c, {});
  CHECK(g.size() == 8);
  const auto tasks = g.tasks();
  CHECK(tasks.size() == 8);
  CHECK(tasks.front() == GemmTask{0, 0, 0});
  CHECK(tasks[1] == GemmTask{0, 1, 0});
  CHECK(tasks[4] == GemmTask{0, 0, 1});

  std::size_t heads = 0;
  for (const GemmTask& t : tasks) {
    if (!g.predecessor(t)) ++heads;
    if (auto p = g.predecessor(t)) {
      CHECK(p->i == t.i);
      CHECK(p->j == t.j);
      CHECK(p->l + 1 == t.l);
      CHECK(g.successor(*p) == t);
    }
  }
  CHECK(heads == 4);

  Operands one = random_operands(1, 1, 1, 3, RatioSpec(100, 0), 2);
  const TaskGraph g1 = build_task_graph(one.a, one.b, one.c, {});
  CHECK(g1.size() == 1);
  CHECK_FALSE(g1.predecessor({0, 0, 0}));
  CHECK_FALSE(g1.successor({0, 0, 0}));
}

TEST_CASE("build errors") {
  TiledMatrix a(4, 6, 2, PrecisionMap(2, 3));
  TiledMatrix b(4, 4, 2, PrecisionMap(2, 2));
  TiledMatrix c(4, 4, 2, PrecisionMap(2, 2));
  try {
    build_task_graph(a, b, c, {});
    FAIL("expected shape mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::shape_mismatch);
  }
  TiledMatrix a4(4, 4, 4, PrecisionMap(1, 1));
  try {
    build_task_graph(a4, b, c, {});
    FAIL("expected tile size mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::tile_size_mismatch);
  }
}

TEST_CASE("sequential execution semantics") {
  SUBCASE("alpha 0, beta 1 leaves C unchanged") {
    Operands o = random_operands(3, 2, 4, 5, RatioSpec(50, 50), 3);
    const TiledMatrix before = o.c;
    execute_sequential(build_task_graph(o.a, o.b, o.c, {0.0, 1.0}));
    CHECK(bitwise_equal(o.c, before));
  }
  SUBCASE("beta scales C once, not once per reduction step") {
    Operands o = random_operands(2, 2, 3, 4, RatioSpec(50, 50), 4);
    const TiledMatrix before = o.c;
    execute_sequential(build_task_graph(o.a, o.b, o.c, {0.0, 2.0}));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t r = 0; r < 4; ++r)
          for (std::size_t cc = 0; cc < 4; ++cc)
            REQUIRE(o.c.tile({i, j}).get(r, cc) == 2.0 * before.tile({i, j}).get(r, cc));
  }
  SUBCASE("kt=1 with a block-diagonal identity copies B into C's precisions") {
    const std::size_t nb = 3;
    TiledMatrix a(nb, nb, nb, PrecisionMap(1, 1));
    for (std::size_t d = 0; d < nb; ++d) a.tile({0, 0}).set(d, d, 1.0);
    TiledMatrix b(nb, 4 * nb, nb, PrecisionMap(1, 4));
    fill_random(b, 8);
    PrecisionMap cmap(1, 4);
    cmap(0, 1) = Precision::FP32;
    cmap(0, 3) = Precision::FP32;
    TiledMatrix c(nb, 4 * nb, nb, cmap);
    execute_sequential(build_task_graph(a, b, c, {1.0, 0.0}));
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(bitwise_equal(c.tile({0, j}), convert_tile(b.tile({0, j}), cmap(0, j))));
    }
  }
  SUBCASE("all-FP64 equals the dense oracle") {
    GemmProblem p = make_problem(24, 16, 32, 8, RatioSpec(100, 0), 5);
    execute_sequential(build_task_graph(p.a, p.b, p.c, {1.0, 1.0}));
    CHECK(bitwise_equal(to_dense_f64(p.c),
                        reference_gemm_f64(p.a_orig, p.b_orig, p.c_orig, {1.0, 1.0}, 8)));
  }
}

TEST_CASE("parallel equals sequential bitwise (property)") {
  Rng64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t mt = 1 + rng.next() % 5;
    const std::size_t nt = 1 + rng.next() % 5;
    const std::size_t kt = 1 + rng.next() % 5;
    const std::size_t nb = 1 + rng.next() % 9;
    const int d = static_cast<int>(rng.next() % 101);
    const std::uint64_t seed = rng.next();
    const GemmScalars s{rng.uniform() * 2, rng.uniform() * 2};
    Operands o = random_operands(mt, nt, kt, nb, RatioSpec(d, 100 - d), seed);

    TiledMatrix c_seq = o.c;
    execute_sequential(build_task_graph(o.a, o.b, c_seq, s));
    for (std::size_t workers : {1u, 2u, 3u, 8u}) {
      TiledMatrix c_par = o.c;
      const ExecutionStats st = execute_parallel(build_task_graph(o.a, o.b, c_par, s), workers);
      INFO("trial " << trial << " workers " << workers);
      REQUIRE(bitwise_equal(c_par, c_seq));
      std::size_t total = 0;
      for (std::size_t n : st.tasks_per_worker) total += n;
      REQUIRE(total == mt * nt * kt);
    }
  }
}

TEST_CASE("every worker runs a task when chains outnumber workers") {
  Operands o = random_operands(4, 4, 4, 8, RatioSpec(50, 50), 6);
  for (std::size_t workers : {4u, 8u, 16u}) {
    TiledMatrix c = o.c;
    const ExecutionStats st = execute_parallel(build_task_graph(o.a, o.b, c, {}), workers);
    REQUIRE(st.tasks_per_worker.size() == workers);
    for (std::size_t n : st.tasks_per_worker) CHECK(n >= 1);
  }
}

TEST_CASE("zero workers is rejected") {
  Operands o = random_operands(1, 1, 1, 2, RatioSpec(100, 0), 7);
  CHECK_THROWS_AS(execute_parallel(build_task_graph(o.a, o.b, o.c, {}), 0), Error);
}

TEST_CASE("flop report") {
  SUBCASE("paper-scale all-FP64 grid") {
    // Formula only; the graph for 100x100x100 tiles of 1024 would not fit in
    // memory, so evaluate on tiny tiles and rescale by nb.
    TiledMatrix a(100, 100, 1, PrecisionMap(100, 100));
    TiledMatrix b(100, 100, 1, PrecisionMap(100, 100));
    TiledMatrix c(100, 100, 1, PrecisionMap(100, 100));
    const TaskGraph g = build_task_graph(a, b, c, {});
    const FlopReport r = flop_report(g, c.map(), 1024);
    CHECK(r.flops_fp64 == 2ull * 1'000'000ull * 1024ull * 1024ull * 1024ull);
    CHECK(r.flops_fp32 == 0);
    CHECK(r.tasks_fp64 == 1'000'000);
  }
  SUBCASE("even split") {
    Operands o = random_operands(4, 4, 3, 2, RatioSpec(50, 50), 8);
    const FlopReport r = flop_report(build_task_graph(o.a, o.b, o.c, {}), o.c.map(), 2);
    CHECK(r.tasks_fp64 == r.tasks_fp32);
    CHECK(r.tasks_fp64 + r.tasks_fp32 == 48);
  }
  SUBCASE("single task") {
    Operands o = random_operands(1, 1, 1, 2, RatioSpec(100, 0), 9);
    const FlopReport r = flop_report(build_task_graph(o.a, o.b, o.c, {}), o.c.map(), 2);
    CHECK(r.flops_fp64 + r.flops_fp32 == 16);
  }
  SUBCASE("totals equal 2MNK") {
    Rng64 rng(3);
    for (int t = 0; t < 20; ++t) {
      const std::size_t mt = 1 + rng.next() % 6, nt = 1 + rng.next() % 6, kt = 1 + rng.next() % 6;
      const std::size_t nb = 1 + rng.next() % 4;
      const int d = static_cast<int>(rng.next() % 101);
      Operands o = random_operands(mt, nt, kt, nb, RatioSpec(d, 100 - d), rng.next());
      const TaskGraph g = build_task_graph(o.a, o.b, o.c, {});
      const FlopReport r = flop_report(g, o.c.map(), nb);
      REQUIRE(g.size() == mt * nt * kt);
      REQUIRE(r.flops_fp64 + r.flops_fp32 == 2ull * (mt * nb) * (nt * nb) * (kt * nb));
      REQUIRE(r.flops_fp64 == 2ull * nb * nb * nb * r.tasks_fp64);
    }
  }
}
