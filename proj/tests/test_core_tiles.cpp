#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "tcgemm/error.hpp"
#include "tcgemm/rng.hpp"
#include "tcgemm/tiled_matrix.hpp"

using namespace tcgemm;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected tcgemm::Error");
  return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("precision widths") {
  CHECK(width(Precision::FP64) == 8);
  CHECK(width(Precision::FP32) == 4);
}

TEST_CASE("splitmix64 reference sequence") {
  Rng64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ull);

  Rng64 x(12345), y(12345);
  for (int i = 0; i < 1000; ++i) REQUIRE(x.next() == y.next());
}

TEST_CASE("uniform mapping endpoints") {
  CHECK(Rng64::uniform_from_bits(0) == -1.0);
  CHECK(Rng64::uniform_from_bits(~std::uint64_t{0}) == 1.0 - std::ldexp(1.0, -52));
}

TEST_CASE("uniform draws stay in [-1, 1)") {
  Rng64 rng(2024);
  double lo = 1.0, hi = -1.0;
  for (int i = 0; i < 1'000'000; ++i) {
    const double v = rng.uniform();
    REQUIRE(v >= -1.0);
    REQUIRE(v < 1.0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo < -0.999);
  CHECK(hi > 0.999);
}

TEST_CASE("construction") {
  TiledMatrix m(2048, 2048, 1024, PrecisionMap(2, 2));
  CHECK(m.mt() == 2);
  CHECK(m.nt() == 2);
  CHECK(m.tile({1, 1}).elements() == 1024u * 1024u);

  TiledMatrix single(1024, 1024, 1024, PrecisionMap(1, 1));
  CHECK(single.mt() == 1);
  CHECK(single.nt() == 1);

  TiledMatrix rect(6, 9, 3, PrecisionMap(2, 3, Precision::FP32));
  CHECK(rect.mt() * rect.nb() == rect.rows());
  CHECK(rect.nt() * rect.nb() == rect.cols());
  CHECK(rect.tile({1, 2}).precision() == Precision::FP32);
  CHECK(rect.tile({0, 0}).get(2, 2) == 0.0);

  CHECK(code_of([] { TiledMatrix(1000, 1024, 1024, PrecisionMap(1, 1)); }) ==
        Errc::dimension_not_divisible);
  CHECK(code_of([] { TiledMatrix(8, 8, 4, PrecisionMap(2, 1)); }) == Errc::map_shape_mismatch);
  CHECK(code_of([] { TiledMatrix(8, 8, 0, PrecisionMap(2, 2)); }) == Errc::dimension_not_divisible);
}

TEST_CASE("tile precision follows the map and byte totals add up") {
  PrecisionMap map(2, 3);
  map(0, 1) = Precision::FP32;
  map(1, 2) = Precision::FP32;
  TiledMatrix m(8, 12, 4, map);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(m.tile({i, j}).precision() == map(i, j));
  CHECK(m.bytes() == 4 * 16 * 8 + 2 * 16 * 4);
  CHECK_THROWS_AS(m.tile({0, 1}).data<double>(), Error);
}

TEST_CASE("fill_random matches the frozen stream") {
  // Tile-major stream from seed 7, nb = 2; values from the big-integer oracle
  // in tests/oracles/splitmix_oracle.py.
  const double expected[16] = {
      -0x1.c341e1ba6cdf8p-3, -0x1.eecf0ca02f0e8p-1, 0x1.9a610202eac4ap-1,  0x1.53aeb70673e28p-3,
      -0x1.85989332bc3c0p-4, -0x1.009505e4d1056p-1, -0x1.06876bd987a60p-4, -0x1.60194d7617ea4p-2,
      -0x1.7684fe159abe8p-1, -0x1.63c5d897786b0p-3, -0x1.95f46193e9282p-1, 0x1.d6e93adca3758p-1,
      0x1.ac0d537d2916cp-1,  0x1.7c3e64928c058p-1,  0x1.74be6cb42d7c4p-1,  0x1.8b920d635d700p-4,
  };
  TiledMatrix m(4, 4, 2, PrecisionMap(2, 2));
  fill_random(m, 7);
  int idx = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) CHECK(m.tile({i, j}).get(r, c) == expected[idx++]);

  // Global row-major placement of the same stream.
  const DenseMatrix d = random_dense(4, 4, 2, 7);
  CHECK(d(0, 0) == expected[0]);
  CHECK(d(0, 2) == expected[4]);
  CHECK(d(1, 1) == expected[3]);
  CHECK(d(3, 3) == expected[15]);
}

TEST_CASE("fill_random narrows FP32 tiles from the same FP64 stream") {
  TiledMatrix d64(64, 64, 16, PrecisionMap(4, 4, Precision::FP64));
  TiledMatrix d32(64, 64, 16, PrecisionMap(4, 4, Precision::FP32));
  fill_random(d64, 99);
  fill_random(d32, 99);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      auto src = d64.tile({i, j}).data<double>();
      auto dst = d32.tile({i, j}).data<float>();
      for (std::size_t e = 0; e < src.size(); ++e) REQUIRE(dst[e] == static_cast<float>(src[e]));
    }

  TiledMatrix again(64, 64, 16, PrecisionMap(4, 4, Precision::FP32));
  fill_random(again, 99);
  CHECK(bitwise_equal(again, d32));
}

TEST_CASE("dense conversion") {
  PrecisionMap map(2, 2);
  map(1, 0) = Precision::FP32;
  TiledMatrix m(4, 4, 2, map);
  m.tile({1, 0}).set(0, 1, 0.5);
  m.tile({0, 1}).set(1, 0, -0.25);
  const DenseMatrix d = to_dense_f64(m);
  CHECK(d(2, 1) == 0.5);
  CHECK(d(1, 2) == -0.25);

  const DenseMatrix src = random_dense(8, 12, 4, 3);
  const TiledMatrix t = from_dense(src, 4, PrecisionMap(2, 3));
  CHECK(bitwise_equal(to_dense_f64(t), src));
}

TEST_CASE("FP32 -> FP64 -> FP32 is the identity on finite FP32 values") {
  Rng64 rng(5);
  for (int i = 0; i < 100000; ++i) {
    auto bits = static_cast<std::uint32_t>(rng.next());
    const float f = std::bit_cast<float>(bits);
    if (!std::isfinite(f)) continue;
    const float back = static_cast<float>(static_cast<double>(f));
    REQUIRE(std::bit_cast<std::uint32_t>(back) == bits);
  }
}
