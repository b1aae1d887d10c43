#include "cli/table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace comb::cli {

namespace {
std::string double_repr(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}
}  // namespace

std::string Table::format_cell(const Cell& c) {
  if (std::holds_alternative<double>(c)) return double_repr(std::get<double>(c));
  if (std::holds_alternative<long>(c)) return std::to_string(std::get<long>(c));
  return std::get<std::string>(c);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw std::logic_error("Table: row width does not match the header");
  rows_.push_back(std::move(row));
}

void Table::write_csv(std::ostream& os) const {
  for (size_t i = 0; i < columns_.size(); ++i)
    os << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i)
      os << format_cell(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
}

void Table::write_json(std::ostream& os) const {
  os << "{\n  \"columns\": [";
  for (size_t i = 0; i < columns_.size(); ++i)
    os << '"' << json_escape(columns_[i]) << '"' << (i + 1 < columns_.size() ? ", " : "");
  os << "],\n  \"rows\": [\n";
  for (size_t r = 0; r < rows_.size(); ++r) {
    os << "    [";
    for (size_t i = 0; i < rows_[r].size(); ++i) {
      const Cell& c = rows_[r][i];
      if (std::holds_alternative<std::string>(c)) {
        os << '"' << json_escape(std::get<std::string>(c)) << '"';
      } else {
        const std::string v = format_cell(c);
        // JSON has no nan/inf literals
        if (v == "nan" || v == "inf" || v == "-inf") os << '"' << v << '"';
        else os << v;
      }
      if (i + 1 < rows_[r].size()) os << ", ";
    }
    os << (r + 1 < rows_.size() ? "],\n" : "]\n");
  }
  os << "  ]\n}\n";
}

}  // namespace comb::cli
