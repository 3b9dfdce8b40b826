#pragma once

// Result tables and their CSV / JSON encodings.
//
// CSV: comma separated, one header row, '.' decimal separator, missing
// values as empty fields, "inf" for unbounded values.
// JSON: {"config": {...}, "columns": [...], "rows": [[...]], "seed": n,
// "version": "..."}; missing values are null and unbounded values "inf".

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aggmd {

/// Empty optional = missing value; +infinity = unbounded.
using Cell = std::optional<double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;
  Cell at(std::size_t row, const std::string& column) const;
};

enum class OutputFormat { Csv, Json };

/// Flat description of the run that produced a table.
using RunInfo = std::map<std::string, std::string>;

inline constexpr const char* kFormatVersion = "1.0.0";

std::string format_cell(const Cell& c);

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const Table& table, const RunInfo& config, std::uint64_t seed);

/// Parses CSV written by write_csv. When `expected_columns` is nonempty the
/// header must match it exactly.
Table read_csv(std::istream& is, const std::vector<std::string>& expected_columns = {});
Table read_json(std::istream& is, const std::vector<std::string>& expected_columns = {});

/// Writes to `path`, or to `fallback` when `path` is empty. Throws IoError.
void emit_table(const Table& table, OutputFormat format, const std::string& path, std::ostream& fallback,
                const RunInfo& config, std::uint64_t seed);

}  // namespace aggmd
