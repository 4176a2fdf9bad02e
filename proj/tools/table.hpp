#ifndef TDELTA_TOOLS_TABLE_HPP
#define TDELTA_TOOLS_TABLE_HPP

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace tdelta::cli {

using Cell = std::variant<std::monostate, long long, double, std::string>;
using Row = std::vector<Cell>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  std::optional<Row> summary;  // compare only; rendered as a trailing CSV row
  std::optional<std::string> error;
};

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    }
  } visit;
  return std::visit(visit, c);
}

inline void write_csv_row(std::ostream& os, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
  os << '\n';
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) write_csv_row(os, r);
  if (t.summary) write_csv_row(os, *t.summary);
  os.flush();
}

inline nlohmann::json json_cell(const Cell& c) {
  struct {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(long long v) const { return v; }
    nlohmann::json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      return v;
    }
    nlohmann::json operator()(const std::string& s) const { return s; }
  } visit;
  return std::visit(visit, c);
}

inline nlohmann::json json_row(const std::vector<std::string>& columns, const Row& row) {
  auto obj = nlohmann::json::object();
  for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = json_cell(row[i]);
  return obj;
}

inline void write_json(std::ostream& os, const Table& t) {
  nlohmann::json doc;
  doc["command"] = t.command;
  doc["columns"] = t.columns;
  doc["rows"] = nlohmann::json::array();
  for (const auto& r : t.rows) doc["rows"].push_back(json_row(t.columns, r));
  if (t.summary) doc["summary"] = json_row(t.columns, *t.summary);
  if (t.error) doc["error"] = *t.error;
  os << doc.dump(2) << '\n';
  os.flush();
}

}  // namespace tdelta::cli

#endif  // TDELTA_TOOLS_TABLE_HPP
