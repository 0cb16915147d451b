#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qwork/serialize.hpp"

namespace qwork::cli {

using Cell = std::variant<double, long, std::string>;

/// Rows of a command result in grid order, plus free-form metadata that only
/// the JSON form carries (CSV stays a plain header and rows).
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Json metadata = Json::object();

  void add_row(std::vector<Cell> row);
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

// CSV: header row, '.' decimal, LF endings, shortest round-trip numbers.
void write_csv(std::ostream& os, const ResultTable& t);
// {"metadata": {...}, "columns": [...], "rows": [{column: value}, ...]};
// non-finite numbers become null.
void write_json(std::ostream& os, const ResultTable& t);

// Writes to `path` ("-" for stdout) in the given format.
void emit(const ResultTable& t, const std::string& format, const std::string& path);
std::string render(const ResultTable& t, const std::string& format);

}  // namespace qwork::cli
