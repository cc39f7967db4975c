#pragma once

// JSON matrix input (array of rows, inline or `@path`) and JSON output.

#include <string>
#include <string_view>

#include "geolog/matcore.hpp"

namespace geolog {

/// Parses `[[a, b], [c, d]]`. Throws ParseError with line and column on
/// malformed JSON, DimensionMismatch on ragged or non-square input.
Mat parse_matrix(std::string_view text);

/// `@path` reads the file, anything else is parsed inline.
Mat load_matrix_arg(const std::string& arg);

std::string read_text_file(const std::string& path);

/// Line and column (both 1-based) of a byte offset.
struct TextPosition {
  std::size_t line = 1;
  std::size_t column = 1;
};
TextPosition text_position(std::string_view text, std::size_t offset);

}  // namespace geolog
