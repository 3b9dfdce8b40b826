#include "aggmd/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "aggmd/errors.hpp"

namespace aggmd {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw UsageError("table row has " + std::to_string(row.size()) + " cells, expected " +
                     std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw UsageError("no column named '" + name + "'");
}

Cell Table::at(std::size_t row, const std::string& column) const {
  return rows.at(row).at(column_index(column));
}

std::string format_cell(const Cell& c) {
  if (!c) return "";
  if (std::isinf(*c)) return *c > 0 ? "inf" : "-inf";
  if (std::isnan(*c)) return "";
  // shortest text that parses back to the same double
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, *c);
  return std::string(buf, res.ptr);
}

namespace {

Cell parse_cell(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("unparsable table cell '" + text + "'");
  }
  if (used != text.size()) throw UsageError("unparsable table cell '" + text + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void check_header(const std::vector<std::string>& got, const std::vector<std::string>& expected) {
  if (!expected.empty() && got != expected) throw UsageError("table header does not match the schema");
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_cell(row[i]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table, const RunInfo& config, std::uint64_t seed) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) doc["config"][k] = v;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto jr = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (!c || std::isnan(*c)) {
        jr.push_back(nullptr);
      } else if (std::isinf(*c)) {
        jr.push_back(*c > 0 ? "inf" : "-inf");
      } else {
        jr.push_back(*c);
      }
    }
    rows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(rows);
  doc["seed"] = seed;
  doc["version"] = kFormatVersion;
  os << doc.dump(2) << '\n';
}

Table read_csv(std::istream& is, const std::vector<std::string>& expected_columns) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw UsageError("empty CSV input");
  t.columns = split_csv_line(line);
  check_header(t.columns, expected_columns);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_cell(f));
    t.add_row(std::move(row));
  }
  return t;
}

Table read_json(std::istream& is, const std::vector<std::string>& expected_columns) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed JSON table: ") + e.what());
  }
  for (const char* key : {"config", "columns", "rows", "seed", "version"}) {
    if (!doc.contains(key)) throw UsageError(std::string("JSON table lacks '") + key + "'");
  }
  Table t;
  t.columns = doc["columns"].get<std::vector<std::string>>();
  check_header(t.columns, expected_columns);
  for (const auto& jr : doc["rows"]) {
    std::vector<Cell> row;
    for (const auto& c : jr) {
      if (c.is_null()) {
        row.emplace_back(std::nullopt);
      } else if (c.is_string()) {
        row.push_back(parse_cell(c.get<std::string>()));
      } else {
        row.emplace_back(c.get<double>());
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

void emit_table(const Table& table, OutputFormat format, const std::string& path, std::ostream& fallback,
                const RunInfo& config, std::uint64_t seed) {
  auto write = [&](std::ostream& os) {
    if (format == OutputFormat::Csv) {
      write_csv(os, table);
    } else {
      write_json(os, table, config, seed);
    }
  };
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace aggmd
