#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sumgauge/common.hpp"

namespace sumgauge {

// Minimal CSV support for the toolkit's flat schemas: comma separated,
// optional double-quoted fields, lines starting with '#' are comments.
std::vector<std::string> split_csv_line(std::string_view line);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;  // 1-based line numbers, per row

  // index of a header column, or npos
  std::size_t column(std::string_view name) const;
};

// Reads a CSV file with a header row. Throws DataError on I/O failure or
// when a row has more fields than the header.
CsvTable read_csv(const std::string& path);

double parse_double_field(const std::string& value, std::string_view column,
                          std::size_t line);

}  // namespace sumgauge
