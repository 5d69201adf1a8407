#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tcgemm/precision_map.hpp"
#include "tcgemm/task_graph.hpp"
#include "tcgemm/tiled_matrix.hpp"

namespace tcgemm {

/// Virtual P x Q rank grid; rank(r, c) = r*q + c.
struct ProcessGrid {
  std::size_t p = 1;
  std::size_t q = 1;

  ProcessGrid() = default;
  ProcessGrid(std::size_t rows, std::size_t cols);

  /// Parses "PxQ".
  static ProcessGrid parse(const std::string& text);

  std::size_t ranks() const noexcept { return p * q; }
  std::size_t rank(std::size_t r, std::size_t c) const noexcept { return r * q + c; }
};

/// 2D block-cyclic owner of tile t.
std::size_t owner(const ProcessGrid& grid, TileIndex t) noexcept;

/// As square as possible: p is the largest divisor of ranks with p <= sqrt(ranks).
ProcessGrid default_grid(std::size_t ranks);

enum class Operand : char { A = 'A', B = 'B' };

struct CommRecord {
  std::size_t src_rank = 0;
  std::size_t dst_rank = 0;
  Operand matrix = Operand::A;
  TileIndex tile;
  std::size_t iteration = 0;
  std::uint64_t bytes = 0;
  Precision precision = Precision::FP64;

  friend bool operator==(const CommRecord&, const CommRecord&) = default;
};

struct CommReport {
  std::vector<CommRecord> records;
  std::uint64_t messages = 0;
  std::uint64_t bytes_total = 0;
  std::uint64_t bytes_fp64 = 0;
  std::uint64_t bytes_fp32 = 0;
  std::map<std::size_t, std::uint64_t> per_rank_recv;
};

struct SimOptions {
  /// Ship a tile again in every iteration that needs it instead of once per
  /// destination for the whole run.
  bool rebroadcast_per_iter = false;
};

/// Owner-computes SUMMA dataflow: task (i,j,l) runs on owner(C(i,j)) and needs
/// A(i,l) and B(l,j) there. Records are emitted in l, i, j order, one per
/// unique (tile, destination) pair (per iteration with rebroadcast), sized by
/// the tile's stored precision. Throws map_shape_mismatch on bad map shapes.
CommReport simulate_summa(const TaskGraph& g, const ProcessGrid& grid, const PrecisionMap& a_map,
                          const PrecisionMap& b_map, std::size_t nb, SimOptions options = {});

/// Shape-only variant for when no matrices are materialized.
CommReport simulate_summa(std::size_t mt, std::size_t nt, std::size_t kt,
                          const ProcessGrid& grid, const PrecisionMap& a_map,
                          const PrecisionMap& b_map, std::size_t nb, SimOptions options = {});

/// Header "src,dst,matrix,row,col,l,precision,bytes", one line per record,
/// then a "# summary" block of key,value lines.
std::string comm_report_csv(const CommReport& report);

}  // namespace tcgemm
