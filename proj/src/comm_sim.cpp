#include "tcgemm/comm_sim.hpp"

#include <set>
#include <sstream>
#include <string_view>
#include <tuple>

#include "tcgemm/error.hpp"

namespace tcgemm {

ProcessGrid::ProcessGrid(std::size_t rows, std::size_t cols) : p(rows), q(cols) {
  if (p == 0 || q == 0) throw Error(Errc::invalid_argument, "process grid extents must be positive");
}

ProcessGrid ProcessGrid::parse(const std::string& text) {
  const std::size_t x = text.find_first_of("xX");
  auto digits = [](std::string_view s) {
    return !s.empty() && s.size() <= 9 &&
           s.find_first_not_of("0123456789") == std::string_view::npos;
  };
  const std::string_view view(text);
  if (x == std::string::npos || !digits(view.substr(0, x)) || !digits(view.substr(x + 1))) {
    throw Error(Errc::invalid_argument, "grid '" + text + "' is not of the form PxQ");
  }
  return ProcessGrid(std::stoul(text.substr(0, x)), std::stoul(text.substr(x + 1)));
}

std::size_t owner(const ProcessGrid& grid, TileIndex t) noexcept {
  return grid.rank(t.row % grid.p, t.col % grid.q);
}

ProcessGrid default_grid(std::size_t ranks) {
  if (ranks == 0) throw Error(Errc::invalid_argument, "need at least one rank");
  std::size_t p = 1;
  for (std::size_t d = 1; d * d <= ranks; ++d) {
    if (ranks % d == 0) p = d;
  }
  return ProcessGrid(p, ranks / p);
}

CommReport simulate_summa(const TaskGraph& g, const ProcessGrid& grid, const PrecisionMap& a_map,
                          const PrecisionMap& b_map, std::size_t nb, SimOptions options) {
  return simulate_summa(g.mt(), g.nt(), g.kt(), grid, a_map, b_map, nb, options);
}

CommReport simulate_summa(std::size_t mt, std::size_t nt, std::size_t kt,
                          const ProcessGrid& grid, const PrecisionMap& a_map,
                          const PrecisionMap& b_map, std::size_t nb, SimOptions options) {
  if (a_map.mt() != mt || a_map.nt() != kt || b_map.mt() != kt || b_map.nt() != nt) {
    throw Error(Errc::map_shape_mismatch, "A/B maps do not match the task graph shape");
  }
  CommReport report;
  // (matrix, row, col, dst, iteration); iteration is 0 unless rebroadcasting.
  std::set<std::tuple<char, std::size_t, std::size_t, std::size_t, std::size_t>> shipped;

  auto need = [&](Operand m, TileIndex t, Precision stored, std::size_t dst, std::size_t l) {
    const std::size_t src = owner(grid, t);
    if (src == dst) return;
    const std::size_t key_iter = options.rebroadcast_per_iter ? l : 0;
    if (!shipped.emplace(static_cast<char>(m), t.row, t.col, dst, key_iter).second) return;
    CommRecord rec{src, dst, m, t, l, static_cast<std::uint64_t>(nb) * nb * width(stored), stored};
    report.bytes_total += rec.bytes;
    (stored == Precision::FP64 ? report.bytes_fp64 : report.bytes_fp32) += rec.bytes;
    report.per_rank_recv[dst] += rec.bytes;
    report.records.push_back(rec);
  };

  for (std::size_t l = 0; l < kt; ++l) {
    for (std::size_t i = 0; i < mt; ++i) {
      for (std::size_t j = 0; j < nt; ++j) {
        const std::size_t dst = owner(grid, {i, j});
        need(Operand::A, {i, l}, a_map(i, l), dst, l);
        need(Operand::B, {l, j}, b_map(l, j), dst, l);
      }
    }
  }
  report.messages = report.records.size();
  return report;
}

std::string comm_report_csv(const CommReport& report) {
  std::ostringstream out;
  out << "src,dst,matrix,row,col,l,precision,bytes\n";
  for (const CommRecord& r : report.records) {
    out << r.src_rank << ',' << r.dst_rank << ',' << static_cast<char>(r.matrix) << ','
        << r.tile.row << ',' << r.tile.col << ',' << r.iteration << ',' << to_string(r.precision)
        << ',' << r.bytes << '\n';
  }
  out << "# summary\n";
  out << "messages," << report.messages << '\n';
  out << "bytes_total," << report.bytes_total << '\n';
  out << "bytes_fp64," << report.bytes_fp64 << '\n';
  out << "bytes_fp32," << report.bytes_fp32 << '\n';
  for (const auto& [rank, bytes] : report.per_rank_recv) {
    out << "recv_rank_" << rank << ',' << bytes << '\n';
  }
  return out.str();
}

}  // namespace tcgemm
