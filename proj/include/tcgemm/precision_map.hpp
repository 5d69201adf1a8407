#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tcgemm/precision.hpp"

namespace tcgemm {

/// Percentages of FP64 ("D") and FP32 ("S") tiles; always sums to 100.
class RatioSpec {
 public:
  RatioSpec(int d_percent, int s_percent);

  /// Parses "a:b" (the CLI form) or "aD:bS" (the label form).
  static RatioSpec parse(std::string_view text);

  int d_percent() const noexcept { return d_; }
  int s_percent() const noexcept { return s_; }

  /// "80D:20S".
  std::string label() const;

  friend bool operator==(const RatioSpec&, const RatioSpec&) = default;

 private:
  int d_;
  int s_;
};

/// The ratio sweep used throughout the benchmarks.
std::vector<RatioSpec> standard_ratios();

/// Per-tile precision assignment of one matrix, row-major over the tile grid.
class PrecisionMap {
 public:
  PrecisionMap() = default;
  PrecisionMap(std::size_t mt, std::size_t nt, Precision fill = Precision::FP64);

  std::size_t mt() const noexcept { return mt_; }
  std::size_t nt() const noexcept { return nt_; }
  std::size_t size() const noexcept { return cells_.size(); }

  Precision operator()(std::size_t i, std::size_t j) const {
    return cells_[i * nt_ + j];
  }
  Precision& operator()(std::size_t i, std::size_t j) {
    return cells_[i * nt_ + j];
  }

  const std::vector<Precision>& cells() const noexcept { return cells_; }

  friend bool operator==(const PrecisionMap&, const PrecisionMap&) = default;

 private:
  std::size_t mt_ = 0;
  std::size_t nt_ = 0;
  std::vector<Precision> cells_;
};

struct MapStats {
  std::size_t count_fp64 = 0;
  std::size_t count_fp32 = 0;
  double fraction_fp64 = 0.0;
};

/// Number of FP64 cells for a grid of `cells` tiles: round(d% * cells),
/// ties away from zero, in exact integer arithmetic.
std::size_t fp64_cell_count(std::size_t cells, const RatioSpec& ratio);

/// Exact-count random map. A Fisher-Yates shuffle of the linear cell indices
/// (driven by Rng64(seed)) picks which cells are FP64.
PrecisionMap generate_ratio_map(std::size_t mt, std::size_t nt,
                                const RatioSpec& ratio, std::uint64_t seed);

MapStats map_stats(const PrecisionMap& map);

/// Text format: "mt nt\n" followed by mt rows of nt characters in {D,S},
/// each terminated by '\n'.
std::string serialize_map(const PrecisionMap& map);
PrecisionMap parse_map(std::string_view text);

enum class HeatmapFormat { CSV, PGM };

/// CSV cells are 64/32; PGM (plain P2) pixels are 0 for FP64, 255 for FP32.
std::string export_heatmap(const PrecisionMap& map, HeatmapFormat format);

/// Seeds used for the A, B and C maps when a single base seed is given.
struct MatrixSeeds {
  std::uint64_t a;
  std::uint64_t b;
  std::uint64_t c;
};

constexpr MatrixSeeds map_seeds(std::uint64_t base) noexcept {
  return {base + 1, base + 2, base + 3};
}

}  // namespace tcgemm
