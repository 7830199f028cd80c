#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace spinbath::cli {

using Cell = std::variant<double, std::string>;

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless

  bool operator==(const Column&) const = default;
};

/// Tabular result of one run plus the configuration that produced it.
struct ResultEnvelope {
  std::string command;
  std::map<std::string, std::string> config;
  std::string version;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::map<std::string, Cell> diagnostics;

  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;

  bool operator==(const ResultEnvelope&) const = default;
};

/// Shortest round-tripping representation with at most 17 significant digits.
std::string format_number(double value);

/// Header `name(unit)`, comma-separated, LF line endings.
std::string to_csv(const ResultEnvelope& envelope);
std::string to_json(const ResultEnvelope& envelope);
ResultEnvelope from_json(const std::string& text);

/// Library version string baked in at build time.
std::string version();

}  // namespace spinbath::cli
