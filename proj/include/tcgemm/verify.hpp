#pragma once

#include <cstddef>
#include <cstdint>

#include "tcgemm/kernels.hpp"
#include "tcgemm/precision_map.hpp"
#include "tcgemm/tiled_matrix.hpp"

namespace tcgemm {

/// Dense FP64 GEMM oracle: C <- alpha*A*B + beta*C with a naive triple loop.
///
/// Each output accumulates its dot product in increasing p. With
/// reduction_block = kb > 0 the partial sum is flushed into C every kb terms
/// (C = alpha*acc + beta*C for the first block, C = alpha*acc + C after), which
/// is the summation order of the tiled engine with nb = kb and all tiles FP64.
/// reduction_block = 0 means a single block of length K.
/// Throws shape_mismatch on non-conforming dimensions, invalid_argument when
/// kb does not divide K.
DenseMatrix reference_gemm_f64(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                               const GemmScalars& scalars, std::size_t reduction_block = 0);

/// ||test - ref||_F / ||ref||_F in FP64. Throws zero_reference_norm when ref
/// is all zero, shape_mismatch when the shapes differ.
double relative_fro_error(const DenseMatrix& test, const DenseMatrix& ref);

/// Data seeds for A, B and C derived from a base seed. The precision maps
/// use map_seeds(base) = base+1..3; the element streams use base+4..6 so
/// that every ratio sees the same FP64 values.
constexpr MatrixSeeds data_seeds(std::uint64_t base) noexcept {
  return {base + 4, base + 5, base + 6};
}

/// A complete M x N x K problem: tiled operands under one ratio plus the
/// original (pre-narrowing) FP64 data for the oracle. The dense copies stay
/// empty when keep_original is false.
struct GemmProblem {
  TiledMatrix a;
  TiledMatrix b;
  TiledMatrix c;
  DenseMatrix a_orig;
  DenseMatrix b_orig;
  DenseMatrix c_orig;
};

GemmProblem make_problem(std::size_t m, std::size_t n, std::size_t k, std::size_t nb,
                         const RatioSpec& ratio, std::uint64_t seed, bool keep_original = true);

}  // namespace tcgemm
