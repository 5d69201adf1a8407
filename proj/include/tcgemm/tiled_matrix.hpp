#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "tcgemm/precision.hpp"
#include "tcgemm/precision_map.hpp"

namespace tcgemm {

struct TileIndex {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const TileIndex&, const TileIndex&) = default;
};

/// A square nb x nb block stored row-major in a single precision.
class Tile {
 public:
  Tile(std::size_t nb, Precision precision);

  std::size_t nb() const noexcept { return nb_; }
  Precision precision() const noexcept { return precision_; }
  std::size_t elements() const noexcept { return nb_ * nb_; }
  std::size_t bytes() const noexcept { return elements() * width(precision_); }

  /// Typed views; throw precision_mismatch when T does not match the storage.
  template <typename T>
  std::span<T> data();
  template <typename T>
  std::span<const T> data() const;

  /// Element (r, c) widened to FP64.
  double get(std::size_t r, std::size_t c) const;
  /// Stores v narrowed to the tile's precision (round to nearest even).
  void set(std::size_t r, std::size_t c, double v);

  friend bool operator==(const Tile&, const Tile&) = default;

 private:
  std::size_t nb_;
  Precision precision_;
  std::variant<std::vector<double>, std::vector<float>> data_;
};

/// Dense row-major FP64 matrix; the oracle-side representation.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

/// A rows x cols matrix partitioned into an mt x nt grid of nb x nb tiles,
/// each tile stored in the precision given by its map cell.
class TiledMatrix {
 public:
  TiledMatrix(std::size_t rows, std::size_t cols, std::size_t nb, PrecisionMap map);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nb() const noexcept { return nb_; }
  std::size_t mt() const noexcept { return map_.mt(); }
  std::size_t nt() const noexcept { return map_.nt(); }
  const PrecisionMap& map() const noexcept { return map_; }

  Tile& tile(TileIndex t) { return tiles_[t.row * nt() + t.col]; }
  const Tile& tile(TileIndex t) const { return tiles_[t.row * nt() + t.col]; }

  std::size_t bytes() const noexcept;

  friend bool operator==(const TiledMatrix&, const TiledMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t nb_;
  PrecisionMap map_;
  std::vector<Tile> tiles_;
};

/// Fills m from a single Rng64(seed): tiles in row-major tile order, elements
/// row-major inside a tile, values drawn in FP64 then narrowed per tile.
void fill_random(TiledMatrix& m, std::uint64_t seed);

/// The pre-narrowing FP64 values fill_random(seed) would produce for a
/// rows x cols matrix with tile size nb, in global row-major layout.
DenseMatrix random_dense(std::size_t rows, std::size_t cols, std::size_t nb,
                         std::uint64_t seed);

DenseMatrix to_dense_f64(const TiledMatrix& m);

/// Builds a tiled matrix from dense data, narrowing into FP32 tiles.
TiledMatrix from_dense(const DenseMatrix& dense, std::size_t nb, PrecisionMap map);

/// Bit-level equality (distinguishes -0.0 from 0.0, equal NaN payloads match).
bool bitwise_equal(const Tile& a, const Tile& b);
bool bitwise_equal(const TiledMatrix& a, const TiledMatrix& b);
bool bitwise_equal(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace tcgemm
