#include "tcgemm/tiled_matrix.hpp"

#include <cstring>
#include <string>

#include "tcgemm/error.hpp"
#include "tcgemm/rng.hpp"

namespace tcgemm {

Tile::Tile(std::size_t nb, Precision precision) : nb_(nb), precision_(precision) {
  if (precision == Precision::FP64) {
    data_ = std::vector<double>(nb * nb, 0.0);
  } else {
    data_ = std::vector<float>(nb * nb, 0.0f);
  }
}

template <typename T>
std::span<T> Tile::data() {
  auto* v = std::get_if<std::vector<T>>(&data_);
  if (v == nullptr) {
    throw Error(Errc::precision_mismatch,
                "tile is stored in " + std::string(to_string(precision_)));
  }
  return {v->data(), v->size()};
}

template <typename T>
std::span<const T> Tile::data() const {
  const auto* v = std::get_if<std::vector<T>>(&data_);
  if (v == nullptr) {
    throw Error(Errc::precision_mismatch,
                "tile is stored in " + std::string(to_string(precision_)));
  }
  return {v->data(), v->size()};
}

template std::span<double> Tile::data<double>();
template std::span<float> Tile::data<float>();
template std::span<const double> Tile::data<double>() const;
template std::span<const float> Tile::data<float>() const;

double Tile::get(std::size_t r, std::size_t c) const {
  return std::visit([&](const auto& v) { return static_cast<double>(v[r * nb_ + c]); }, data_);
}

void Tile::set(std::size_t r, std::size_t c, double value) {
  std::visit(
      [&](auto& v) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        v[r * nb_ + c] = static_cast<T>(value);
      },
      data_);
}

TiledMatrix::TiledMatrix(std::size_t rows, std::size_t cols, std::size_t nb, PrecisionMap map)
    : rows_(rows), cols_(cols), nb_(nb), map_(std::move(map)) {
  if (nb == 0 || rows == 0 || cols == 0 || rows % nb != 0 || cols % nb != 0) {
    throw Error(Errc::dimension_not_divisible,
                std::to_string(rows) + "x" + std::to_string(cols) +
                    " is not divisible into tiles of " + std::to_string(nb));
  }
  if (map_.mt() != rows / nb || map_.nt() != cols / nb) {
    throw Error(Errc::map_shape_mismatch,
                "precision map is " + std::to_string(map_.mt()) + "x" + std::to_string(map_.nt()) +
                    ", tile grid is " + std::to_string(rows / nb) + "x" +
                    std::to_string(cols / nb));
  }
  tiles_.reserve(map_.size());
  for (Precision p : map_.cells()) tiles_.emplace_back(nb, p);
}

std::size_t TiledMatrix::bytes() const noexcept {
  std::size_t total = 0;
  for (const Tile& t : tiles_) total += t.bytes();
  return total;
}

void fill_random(TiledMatrix& m, std::uint64_t seed) {
  Rng64 rng(seed);
  for (std::size_t i = 0; i < m.mt(); ++i) {
    for (std::size_t j = 0; j < m.nt(); ++j) {
      Tile& t = m.tile({i, j});
      for (std::size_t r = 0; r < m.nb(); ++r) {
        for (std::size_t c = 0; c < m.nb(); ++c) t.set(r, c, rng.uniform());
      }
    }
  }
}

DenseMatrix random_dense(std::size_t rows, std::size_t cols, std::size_t nb, std::uint64_t seed) {
  if (nb == 0) throw Error(Errc::dimension_not_divisible, "tile size must be positive");
  TiledMatrix m(rows, cols, nb, PrecisionMap(rows / nb, cols / nb));
  fill_random(m, seed);
  return to_dense_f64(m);
}

DenseMatrix to_dense_f64(const TiledMatrix& m) {
  DenseMatrix d(m.rows(), m.cols());
  const std::size_t nb = m.nb();
  for (std::size_t i = 0; i < m.mt(); ++i) {
    for (std::size_t j = 0; j < m.nt(); ++j) {
      const Tile& t = m.tile({i, j});
      for (std::size_t r = 0; r < nb; ++r) {
        for (std::size_t c = 0; c < nb; ++c) d(i * nb + r, j * nb + c) = t.get(r, c);
      }
    }
  }
  return d;
}

TiledMatrix from_dense(const DenseMatrix& dense, std::size_t nb, PrecisionMap map) {
  TiledMatrix m(dense.rows, dense.cols, nb, std::move(map));
  for (std::size_t i = 0; i < m.mt(); ++i) {
    for (std::size_t j = 0; j < m.nt(); ++j) {
      Tile& t = m.tile({i, j});
      for (std::size_t r = 0; r < nb; ++r) {
        for (std::size_t c = 0; c < nb; ++c) t.set(r, c, dense(i * nb + r, j * nb + c));
      }
    }
  }
  return m;
}

namespace {

template <typename T>
bool same_bits(std::span<const T> a, std::span<const T> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size_bytes()) == 0;
}

}  // namespace

bool bitwise_equal(const Tile& a, const Tile& b) {
  if (a.nb() != b.nb() || a.precision() != b.precision()) return false;
  if (a.precision() == Precision::FP64) return same_bits(a.data<double>(), b.data<double>());
  return same_bits(a.data<float>(), b.data<float>());
}

bool bitwise_equal(const TiledMatrix& a, const TiledMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.nb() != b.nb() || !(a.map() == b.map())) {
    return false;
  }
  for (std::size_t i = 0; i < a.mt(); ++i) {
    for (std::size_t j = 0; j < a.nt(); ++j) {
      if (!bitwise_equal(a.tile({i, j}), b.tile({i, j}))) return false;
    }
  }
  return true;
}

bool bitwise_equal(const DenseMatrix& a, const DenseMatrix& b) {
  return a.rows == b.rows && a.cols == b.cols &&
         same_bits(std::span<const double>(a.data), std::span<const double>(b.data));
}

}  // namespace tcgemm
