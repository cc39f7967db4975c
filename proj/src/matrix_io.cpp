#include "geolog/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geolog/error.hpp"

namespace geolog {

TextPosition text_position(std::string_view text, std::size_t offset) {
  TextPosition pos;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

Mat parse_matrix(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is one past the offending character.
    const TextPosition pos = text_position(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorCode::parse_error, "line " + std::to_string(pos.line) + ", column " +
                                            std::to_string(pos.column) + ": malformed JSON");
  }
  if (!doc.is_array() || doc.empty()) {
    throw Error(ErrorCode::parse_error, "matrix must be a non-empty JSON array of rows");
  }
  const std::size_t n = doc.size();
  Mat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = doc[i];
    if (!row.is_array()) {
      throw Error(ErrorCode::parse_error, "row " + std::to_string(i + 1) + " is not an array");
    }
    if (row.size() != n) {
      throw Error(ErrorCode::dimension_mismatch,
                  "row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                      " entries, expected " + std::to_string(n) + " (square matrix)");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!row[j].is_number()) {
        throw Error(ErrorCode::parse_error, "entry (" + std::to_string(i + 1) + "," +
                                                std::to_string(j + 1) + ") is not a number");
      }
      const double v = row[j].get<double>();
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::parse_error, "entry is not finite");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return m;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Mat load_matrix_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') return parse_matrix(read_text_file(arg.substr(1)));
  return parse_matrix(arg);
}

}  // namespace geolog
