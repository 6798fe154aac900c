#pragma once

// Plain-text system files: one semi-diameter per line, coordinates separated
// by whitespace or commas, '#' starts a comment.

#include <istream>
#include <string>
#include <vector>

#include "quadax/numkernel.hpp"

namespace quadax::app {

struct SystemFile {
  std::vector<Vec> rows;
  std::vector<int> line_numbers;  // 1-based, parallel to rows
};

/// Throws InvalidInput("line N: expected K numbers") for a malformed row; K
/// is fixed by the first data row (2 or 3). The row count must equal K.
SystemFile parse_system(std::istream& in);
SystemFile read_system_file(const std::string& path);

/// "3,2,1" -> {3, 2, 1}
std::vector<double> parse_number_list(const std::string& text, const std::string& what);

}  // namespace quadax::app
