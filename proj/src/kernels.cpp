#include "tcgemm/kernels.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "tcgemm/error.hpp"

namespace tcgemm {

Tile convert_tile(const Tile& t, Precision target) {
  if (t.precision() == target) return t;
  Tile out(t.nb(), target);
  if (target == Precision::FP32) {
    auto src = t.data<double>();
    std::transform(src.begin(), src.end(), out.data<float>().begin(),
                   [](double v) { return static_cast<float>(v); });
  } else {
    auto src = t.data<float>();
    std::transform(src.begin(), src.end(), out.data<double>().begin(),
                   [](float v) { return static_cast<double>(v); });
  }
  return out;
}

namespace {

constexpr std::size_t kRowBlock = 4;
constexpr std::size_t kColBlock = 128;

// Row-block x column-block traversal of the strict kernel. Every C element
// still sees acc = ((0 + a0*b0) + a1*b1) + ... in increasing p, so this is
// bitwise identical to the naive r/c/p loop; only the loop nest is
// interchanged so the column loop vectorizes without reassociation.
template <typename T>
void gemm_strict(std::size_t nb, T alpha, const T* __restrict a, const T* __restrict b, T beta,
                 T* __restrict c) {
  std::array<T, kRowBlock * kColBlock> acc;
  for (std::size_t r0 = 0; r0 < nb; r0 += kRowBlock) {
    const std::size_t rows = std::min(kRowBlock, nb - r0);
    for (std::size_t c0 = 0; c0 < nb; c0 += kColBlock) {
      const std::size_t cols = std::min(kColBlock, nb - c0);
      std::fill(acc.begin(), acc.end(), T(0));
      if (rows == kRowBlock) {
        T* __restrict acc0 = acc.data();
        T* __restrict acc1 = acc0 + kColBlock;
        T* __restrict acc2 = acc1 + kColBlock;
        T* __restrict acc3 = acc2 + kColBlock;
        for (std::size_t p = 0; p < nb; ++p) {
          const T a0 = a[(r0 + 0) * nb + p];
          const T a1 = a[(r0 + 1) * nb + p];
          const T a2 = a[(r0 + 2) * nb + p];
          const T a3 = a[(r0 + 3) * nb + p];
          const T* __restrict brow = b + p * nb + c0;
          for (std::size_t j = 0; j < cols; ++j) {
            const T bv = brow[j];
            acc0[j] += a0 * bv;
            acc1[j] += a1 * bv;
            acc2[j] += a2 * bv;
            acc3[j] += a3 * bv;
          }
        }
      } else {
        for (std::size_t r = 0; r < rows; ++r) {
          T* __restrict accr = acc.data() + r * kColBlock;
          for (std::size_t p = 0; p < nb; ++p) {
            const T av = a[(r0 + r) * nb + p];
            const T* __restrict brow = b + p * nb + c0;
            for (std::size_t j = 0; j < cols; ++j) accr[j] += av * brow[j];
          }
        }
      }
      for (std::size_t r = 0; r < rows; ++r) {
        T* __restrict crow = c + (r0 + r) * nb + c0;
        const T* __restrict accr = acc.data() + r * kColBlock;
        for (std::size_t j = 0; j < cols; ++j) {
          const T scaled = alpha * accr[j];
          const T kept = beta * crow[j];
          crow[j] = scaled + kept;
        }
      }
    }
  }
}

}  // namespace

void gemm_tile(double alpha, const Tile& a, const Tile& b, double beta, Tile& c) {
  if (a.nb() != c.nb() || b.nb() != c.nb()) {
    throw Error(Errc::tile_size_mismatch, "gemm_tile operands must share the tile size");
  }
  if (a.precision() != c.precision() || b.precision() != c.precision()) {
    throw Error(Errc::precision_mismatch,
                "gemm_tile operands must be converted to the output precision first");
  }
  if (c.precision() == Precision::FP64) {
    gemm_strict<double>(c.nb(), alpha, a.data<double>().data(), b.data<double>().data(), beta,
                        c.data<double>().data());
  } else {
    gemm_strict<float>(c.nb(), static_cast<float>(alpha), a.data<float>().data(),
                       b.data<float>().data(), static_cast<float>(beta), c.data<float>().data());
  }
}

void mixed_gemm_task(const GemmScalars& scalars, const Tile& a, const Tile& b, Tile& c) {
  const Precision op = c.precision();
  std::optional<Tile> a_conv;
  std::optional<Tile> b_conv;
  if (a.precision() != op) a_conv.emplace(convert_tile(a, op));
  if (b.precision() != op) b_conv.emplace(convert_tile(b, op));
  gemm_tile(scalars.alpha, a_conv ? *a_conv : a, b_conv ? *b_conv : b, scalars.beta, c);
}

}  // namespace tcgemm
