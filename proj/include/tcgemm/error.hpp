#pragma once

#include <stdexcept>
#include <string>

namespace tcgemm {

enum class Errc {
  dimension_not_divisible,
  map_shape_mismatch,
  shape_mismatch,
  tile_size_mismatch,
  precision_mismatch,
  invalid_argument,
  zero_reference_norm,
  parse_bad_header,
  parse_wrong_row_count,
  parse_wrong_row_length,
  parse_illegal_character,
  parse_missing_newline,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tcgemm
