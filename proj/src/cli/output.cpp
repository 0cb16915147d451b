#include "qwork/cli/output.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qwork/errors.hpp"

namespace qwork::cli {

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw InvalidArgument("row width does not match the header");
  rows.push_back(std::move(row));
}

std::size_t ResultTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw InvalidArgument("no column '" + name + "'");
}

double ResultTable::number(std::size_t row, const std::string& name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* l = std::get_if<long>(&c)) return static_cast<double>(*l);
  throw InvalidArgument("column '" + name + "' is not numeric");
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

Json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? Json(*d) : Json(nullptr);
  if (const auto* l = std::get_if<long>(&c)) return Json(*l);
  return Json(std::get<std::string>(c));
}

}  // namespace

void write_csv(std::ostream& os, const ResultTable& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const ResultTable& t) {
  Json doc = Json::object();
  doc["metadata"] = t.metadata;
  doc["columns"] = t.columns;
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

std::string render(const ResultTable& t, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    write_json(os, t);
  } else {
    write_csv(os, t);
  }
  return os.str();
}

void emit(const ResultTable& t, const std::string& format, const std::string& path) {
  const std::string text = render(t, format);
  if (path == "-" || path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("out: cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgument("out: write to '" + path + "' failed");
}

}  // namespace qwork::cli
