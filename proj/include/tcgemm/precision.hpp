#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace tcgemm {

/// Storage format of a tile. Only IEEE binary64 and binary32 are supported.
enum class Precision : std::uint8_t { FP64, FP32 };

constexpr std::size_t width(Precision p) noexcept {
  return p == Precision::FP64 ? 8 : 4;
}

/// 'D' or 'S', as in the aD:bS notation and the map file format.
constexpr char tag_char(Precision p) noexcept {
  return p == Precision::FP64 ? 'D' : 'S';
}

constexpr std::string_view to_string(Precision p) noexcept {
  return p == Precision::FP64 ? "FP64" : "FP32";
}

}  // namespace tcgemm
