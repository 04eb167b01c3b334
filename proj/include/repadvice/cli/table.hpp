#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace repadvice::cli {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Twelve significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double value);

// Header row, RFC-4180 quoting, one line per row.
void write_csv(const Table& table, std::ostream& out);

// {"meta": meta, "rows": [{column: value, ...}, ...]}. Numbers are rounded to
// twelve significant digits; non-finite numbers become strings.
void write_json(const Table& table, const nlohmann::ordered_json& meta, std::ostream& out);

}  // namespace repadvice::cli
