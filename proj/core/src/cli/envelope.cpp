#include "spinbath/cli/envelope.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "spinbath/errors.hpp"

#ifndef SPINBATH_VERSION
#define SPINBATH_VERSION "0.0.0"
#endif

namespace spinbath::cli {

namespace {

using nlohmann::json;

json cell_to_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  const double v = std::get<double>(c);
  // Non-finite values have no JSON number; keep them as tagged strings.
  if (std::isnan(v)) return json{{"number", "nan"}};
  if (std::isinf(v)) return json{{"number", v > 0 ? "inf" : "-inf"}};
  return v;
}

Cell cell_from_json(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.get<double>();
  if (j.is_object() && j.contains("number")) {
    const auto tag = j.at("number").get<std::string>();
    if (tag == "nan") return std::nan("");
    if (tag == "inf") return INFINITY;
    if (tag == "-inf") return -INFINITY;
  }
  throw InvalidArgument("envelope cell must be a number or a string");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void ResultEnvelope::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw InvalidArgument("row has " + std::to_string(row.size()) + " cells, envelope has " +
                          std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::size_t ResultEnvelope::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw InvalidArgument("no column named '" + name + "'");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string to_csv(const ResultEnvelope& envelope) {
  std::string out;
  for (std::size_t i = 0; i < envelope.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(envelope.columns[i].name + "(" + envelope.columns[i].unit + ")");
  }
  out += '\n';
  for (const auto& row : envelope.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* s = std::get_if<std::string>(&row[i])) {
        out += csv_escape(*s);
      } else {
        out += format_number(std::get<double>(row[i]));
      }
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ResultEnvelope& envelope) {
  json j;
  j["command"] = envelope.command;
  j["version"] = envelope.version;
  j["config"] = envelope.config;
  json cols = json::array();
  for (const auto& c : envelope.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
  j["columns"] = cols;
  json rows = json::array();
  for (const auto& row : envelope.rows) {
    json r = json::array();
    for (const auto& c : row) r.push_back(cell_to_json(c));
    rows.push_back(r);
  }
  j["rows"] = rows;
  json diag = json::object();
  for (const auto& [k, v] : envelope.diagnostics) diag[k] = cell_to_json(v);
  j["diagnostics"] = diag;
  // nlohmann prints doubles with round-trip precision.
  return j.dump(1) + "\n";
}

ResultEnvelope from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("invalid envelope JSON: ") + e.what());
  }
  ResultEnvelope env;
  env.command = j.at("command").get<std::string>();
  env.version = j.at("version").get<std::string>();
  env.config = j.at("config").get<std::map<std::string, std::string>>();
  for (const auto& c : j.at("columns")) {
    env.columns.push_back({c.at("name").get<std::string>(), c.at("unit").get<std::string>()});
  }
  for (const auto& r : j.at("rows")) {
    std::vector<Cell> row;
    for (const auto& c : r) row.push_back(cell_from_json(c));
    env.add_row(std::move(row));
  }
  for (const auto& [k, v] : j.at("diagnostics").items()) env.diagnostics[k] = cell_from_json(v);
  return env;
}

std::string version() { return SPINBATH_VERSION; }

}  // namespace spinbath::cli
