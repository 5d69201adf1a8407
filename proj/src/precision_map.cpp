#include "tcgemm/precision_map.hpp"

#include <charconv>
#include <numeric>
#include <utility>

#include "tcgemm/error.hpp"
#include "tcgemm/rng.hpp"

namespace tcgemm {

RatioSpec::RatioSpec(int d_percent, int s_percent) : d_(d_percent), s_(s_percent) {
  if (d_ < 0 || s_ < 0 || d_ + s_ != 100) {
    throw Error(Errc::invalid_argument,
                "ratio " + std::to_string(d_) + ":" + std::to_string(s_) +
                    " must be two non-negative percentages summing to 100");
  }
}

namespace {

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_size(std::string_view text, std::size_t& out) {
  if (text.empty() || text.front() < '0' || text.front() > '9') return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

RatioSpec RatioSpec::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(Errc::invalid_argument, "ratio '" + std::string(text) + "' is not of the form a:b");
  }
  std::string_view d = text.substr(0, colon);
  std::string_view s = text.substr(colon + 1);
  if (!d.empty() && d.back() == 'D') d.remove_suffix(1);
  if (!s.empty() && s.back() == 'S') s.remove_suffix(1);
  int dv = 0;
  int sv = 0;
  if (!parse_int(d, dv) || !parse_int(s, sv)) {
    throw Error(Errc::invalid_argument, "ratio '" + std::string(text) + "' is not of the form a:b");
  }
  return RatioSpec(dv, sv);
}

std::string RatioSpec::label() const {
  return std::to_string(d_) + "D:" + std::to_string(s_) + "S";
}

std::vector<RatioSpec> standard_ratios() {
  return {{100, 0}, {80, 20}, {50, 50}, {20, 80}, {0, 100}};
}

PrecisionMap::PrecisionMap(std::size_t mt, std::size_t nt, Precision fill)
    : mt_(mt), nt_(nt), cells_(mt * nt, fill) {}

std::size_t fp64_cell_count(std::size_t cells, const RatioSpec& ratio) {
  return (cells * static_cast<std::size_t>(ratio.d_percent()) + 50) / 100;
}

PrecisionMap generate_ratio_map(std::size_t mt, std::size_t nt,
                                const RatioSpec& ratio, std::uint64_t seed) {
  if (mt == 0 || nt == 0) {
    throw Error(Errc::invalid_argument, "precision map needs at least one tile");
  }
  const std::size_t n = mt * nt;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng64 rng(seed);
  for (std::size_t i = n - 1; i >= 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next() % (i + 1));
    std::swap(order[i], order[j]);
  }
  PrecisionMap map(mt, nt, Precision::FP32);
  const std::size_t n_fp64 = fp64_cell_count(n, ratio);
  for (std::size_t k = 0; k < n_fp64; ++k) {
    map(order[k] / nt, order[k] % nt) = Precision::FP64;
  }
  return map;
}

MapStats map_stats(const PrecisionMap& map) {
  MapStats stats;
  for (Precision p : map.cells()) {
    (p == Precision::FP64 ? stats.count_fp64 : stats.count_fp32)++;
  }
  if (map.size() > 0) {
    stats.fraction_fp64 = static_cast<double>(stats.count_fp64) / static_cast<double>(map.size());
  }
  return stats;
}

std::string serialize_map(const PrecisionMap& map) {
  std::string out = std::to_string(map.mt()) + " " + std::to_string(map.nt()) + "\n";
  out.reserve(out.size() + map.mt() * (map.nt() + 1));
  for (std::size_t i = 0; i < map.mt(); ++i) {
    for (std::size_t j = 0; j < map.nt(); ++j) out.push_back(tag_char(map(i, j)));
    out.push_back('\n');
  }
  return out;
}

PrecisionMap parse_map(std::string_view text) {
  auto eol = text.find('\n');
  std::string_view header = text.substr(0, eol);
  auto space = header.find(' ');
  std::size_t mt = 0;
  std::size_t nt = 0;
  if (space == std::string_view::npos || !parse_size(header.substr(0, space), mt) ||
      !parse_size(header.substr(space + 1), nt) || mt == 0 || nt == 0) {
    throw Error(Errc::parse_bad_header,
                "map header must be \"mt nt\" with positive integers, got \"" +
                    std::string(header) + "\"");
  }
  if (eol == std::string_view::npos) {
    throw Error(Errc::parse_missing_newline, "map text must end with a newline");
  }

  std::vector<std::string_view> rows;
  std::string_view body = text.substr(eol + 1);
  while (!body.empty()) {
    auto end = body.find('\n');
    rows.push_back(body.substr(0, end));
    body = end == std::string_view::npos ? std::string_view{} : body.substr(end + 1);
  }
  if (rows.size() != mt) {
    throw Error(Errc::parse_wrong_row_count,
                "expected " + std::to_string(mt) + " rows, found " + std::to_string(rows.size()));
  }

  PrecisionMap map(mt, nt);
  for (std::size_t i = 0; i < mt; ++i) {
    if (rows[i].size() != nt) {
      throw Error(Errc::parse_wrong_row_length,
                  "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                      " cells, expected " + std::to_string(nt));
    }
    for (std::size_t j = 0; j < nt; ++j) {
      switch (rows[i][j]) {
        case 'D': map(i, j) = Precision::FP64; break;
        case 'S': map(i, j) = Precision::FP32; break;
        default:
          throw Error(Errc::parse_illegal_character,
                      "illegal character '" + std::string(1, rows[i][j]) + "' at row " +
                          std::to_string(i) + ", column " + std::to_string(j));
      }
    }
  }
  if (text.back() != '\n') {
    throw Error(Errc::parse_missing_newline, "map text must end with a newline");
  }
  return map;
}

std::string export_heatmap(const PrecisionMap& map, HeatmapFormat format) {
  std::string out;
  const bool csv = format == HeatmapFormat::CSV;
  if (!csv) {
    out = "P2\n" + std::to_string(map.nt()) + " " + std::to_string(map.mt()) + "\n255\n";
  }
  for (std::size_t i = 0; i < map.mt(); ++i) {
    for (std::size_t j = 0; j < map.nt(); ++j) {
      if (j > 0) out.push_back(csv ? ',' : ' ');
      const bool fp64 = map(i, j) == Precision::FP64;
      out += csv ? (fp64 ? "64" : "32") : (fp64 ? "0" : "255");
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace tcgemm
