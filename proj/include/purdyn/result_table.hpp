#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace purdyn {

using Cell = std::variant<double, std::string>;

/// Flat CSV table: a header, numeric data rows, and labelled footer rows
/// whose first cell is a non-numeric string.
///
/// Doubles are written in their shortest round-trip form, so parsing the
/// emitted text reproduces the table exactly. Output is UTF-8 with LF line
/// endings.
struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::vector<Cell>> footer;

  /// Appends a data row; throws InvalidArgument on a column-count mismatch or
  /// a non-numeric first cell.
  void add_row(std::vector<Cell> row);

  /// Appends a footer row; the first cell must be a non-numeric label.
  void add_footer(std::vector<Cell> row);

  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;

  static ResultTable from_csv(std::string_view text);

  /// Numeric value of a data cell; throws InvalidArgument for strings.
  double number(std::size_t row, std::string_view column) const;
  const Cell& cell(std::size_t row, std::string_view column) const;
  std::size_t column(std::string_view name) const;

  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

}  // namespace purdyn
