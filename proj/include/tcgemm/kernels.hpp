#pragma once

#include "tcgemm/tiled_matrix.hpp"

namespace tcgemm {

/// Kept in FP64; narrowed (round to nearest even) inside FP32 tasks.
struct GemmScalars {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Copy of t in the target precision. FP64 -> FP32 rounds to nearest even
/// (overflowing to +/-inf); FP32 -> FP64 is exact.
Tile convert_tile(const Tile& t, Precision target);

/// C <- alpha*A*B + beta*C in C's precision. For each (r, c) the dot product
/// is accumulated in increasing p starting from zero, then combined as
/// alpha*acc + beta*C[r,c]; results are bit-reproducible.
/// Throws precision_mismatch unless A and B are already in C's precision,
/// tile_size_mismatch unless all three tiles share nb.
void gemm_tile(double alpha, const Tile& a, const Tile& b, double beta, Tile& c);

/// Receiver-side conversion: the task computes in C's precision and converts
/// private copies of A and B when their stored precision differs.
void mixed_gemm_task(const GemmScalars& scalars, const Tile& a, const Tile& b, Tile& c);

}  // namespace tcgemm
