#include "tcgemm/verify.hpp"

#include <cmath>
#include <string>

#include "tcgemm/error.hpp"

namespace tcgemm {

DenseMatrix reference_gemm_f64(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                               const GemmScalars& scalars, std::size_t reduction_block) {
  const std::size_t m = a.rows;
  const std::size_t k = a.cols;
  const std::size_t n = b.cols;
  if (b.rows != k || c.rows != m || c.cols != n) {
    throw Error(Errc::shape_mismatch, "reference GEMM operands do not conform");
  }
  const std::size_t kb = reduction_block == 0 ? k : reduction_block;
  if (k % kb != 0) {
    throw Error(Errc::invalid_argument,
                "reduction block " + std::to_string(kb) + " does not divide K=" + std::to_string(k));
  }

  // Column-major copy of B so the p loop walks contiguous memory.
  std::vector<double> bt(k * n);
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t col = 0; col < n; ++col) bt[col * k + p] = b(p, col);

  DenseMatrix out = c;
  for (std::size_t r = 0; r < m; ++r) {
    const double* arow = &a.data[r * k];
    for (std::size_t col = 0; col < n; ++col) {
      const double* bcol = &bt[col * k];
      double v = out(r, col);
      for (std::size_t p0 = 0; p0 < k; p0 += kb) {
        double acc = 0.0;
        for (std::size_t p = p0; p < p0 + kb; ++p) acc += arow[p] * bcol[p];
        const double scaled = scalars.alpha * acc;
        const double kept = (p0 == 0 ? scalars.beta : 1.0) * v;
        v = scaled + kept;
      }
      out(r, col) = v;
    }
  }
  return out;
}

double relative_fro_error(const DenseMatrix& test, const DenseMatrix& ref) {
  if (test.rows != ref.rows || test.cols != ref.cols) {
    throw Error(Errc::shape_mismatch, "error operands differ in shape");
  }
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t idx = 0; idx < ref.data.size(); ++idx) {
    const double d = test.data[idx] - ref.data[idx];
    diff += d * d;
    norm += ref.data[idx] * ref.data[idx];
  }
  if (norm == 0.0) throw Error(Errc::zero_reference_norm, "reference matrix has zero norm");
  return std::sqrt(diff) / std::sqrt(norm);
}

GemmProblem make_problem(std::size_t m, std::size_t n, std::size_t k, std::size_t nb,
                         const RatioSpec& ratio, std::uint64_t seed, bool keep_original) {
  if (nb == 0 || m % nb != 0 || n % nb != 0 || k % nb != 0) {
    throw Error(Errc::dimension_not_divisible,
                "M, N and K must be positive multiples of nb=" + std::to_string(nb));
  }
  const MatrixSeeds ms = map_seeds(seed);
  const MatrixSeeds ds = data_seeds(seed);
  GemmProblem p{
      TiledMatrix(m, k, nb, generate_ratio_map(m / nb, k / nb, ratio, ms.a)),
      TiledMatrix(k, n, nb, generate_ratio_map(k / nb, n / nb, ratio, ms.b)),
      TiledMatrix(m, n, nb, generate_ratio_map(m / nb, n / nb, ratio, ms.c)),
      {}, {}, {}};
  fill_random(p.a, ds.a);
  fill_random(p.b, ds.b);
  fill_random(p.c, ds.c);
  if (!keep_original) return p;
  p.a_orig = random_dense(m, k, nb, ds.a);
  p.b_orig = random_dense(k, n, nb, ds.b);
  p.c_orig = random_dense(m, n, nb, ds.c);
  return p;
}

}  // namespace tcgemm
