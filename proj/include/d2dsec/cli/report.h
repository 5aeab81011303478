#pragma once

#include <cstdint>
#include <json.hpp>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace d2dsec::cli {

/// A probability; printed with 6 significant digits in CSV.
struct Probability {
  double value;
};

/// Table cell. monostate is an empty CSV field and null in JSON.
using Cell = std::variant<std::monostate, Probability, double, std::uint64_t, bool, std::string>;

/// Tabular command output plus run-level metadata.
struct Report {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Appends a row; throws std::logic_error when its width is wrong.
  void add_row(std::vector<Cell> row);
};

/// Header line plus one line per row, RFC-4180 quoting, "\n" line ends.
void write_csv(const Report& report, std::ostream& out);

/// {"command", "params", "summary", "columns", "rows": [{column: value}]}.
void write_json(const Report& report, std::ostream& out);

std::string format_cell(const Cell& cell);
std::string csv_escape(const std::string& field);

}  // namespace d2dsec::cli
