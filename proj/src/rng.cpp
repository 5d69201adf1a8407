#include "tcgemm/rng.hpp"

#include <cmath>

namespace tcgemm {

double Rng64::uniform_from_bits(std::uint64_t u) noexcept {
  // (u >> 11) < 2^53, so the product with 2^-53 and the affine map are exact.
  return std::ldexp(static_cast<double>(u >> 11), -53) * 2.0 - 1.0;
}

}  // namespace tcgemm
