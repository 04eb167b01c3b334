#include "repadvice/cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace repadvice::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

std::string quote_csv(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  return std::get<std::string>(cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return std::stod(format_number(*d));
  }
  return std::get<std::string>(cell);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << quote_csv(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << quote_csv(cell_text(row[i]));
    out << '\n';
  }
}

void write_json(const Table& table, const nlohmann::ordered_json& meta, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["meta"] = meta;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace repadvice::cli
