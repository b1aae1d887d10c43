#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace comb::cli {

// Rectangular result table with deterministic, locale-independent rendering.
// Doubles are printed with std::to_chars (shortest round-trip form).
class Table {
 public:
  using Cell = std::variant<double, long, std::string>;

  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;

  const std::vector<std::string>& columns() const { return columns_; }
  size_t rows() const { return rows_.size(); }

  static std::string format_cell(const Cell& c);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace comb::cli
