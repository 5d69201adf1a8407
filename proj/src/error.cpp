#include "tcgemm/error.hpp"

namespace tcgemm {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::dimension_not_divisible: return "dimension not divisible by tile size";
    case Errc::map_shape_mismatch: return "precision map shape mismatch";
    case Errc::shape_mismatch: return "shape mismatch";
    case Errc::tile_size_mismatch: return "tile size mismatch";
    case Errc::precision_mismatch: return "precision mismatch";
    case Errc::invalid_argument: return "invalid argument";
    case Errc::zero_reference_norm: return "zero reference norm";
    case Errc::parse_bad_header: return "bad map header";
    case Errc::parse_wrong_row_count: return "wrong map row count";
    case Errc::parse_wrong_row_length: return "wrong map row length";
    case Errc::parse_illegal_character: return "illegal map character";
    case Errc::parse_missing_newline: return "missing trailing newline";
  }
  return "unknown error";
}

}  // namespace tcgemm
