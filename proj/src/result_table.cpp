#include "purdyn/result_table.hpp"

#include <fstream>

#include "purdyn/errors.hpp"
#include "purdyn/format.hpp"

namespace purdyn {

namespace {

std::string render(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  return std::get<std::string>(cell);
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  out += '\n';
}

bool is_numeric(const Cell& cell) { return std::holds_alternative<double>(cell); }

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void check_text_cell(const std::string& s) {
  if (s.find_first_of(",\n\r") != std::string::npos) {
    throw InvalidArgument("ResultTable: text cell contains a separator: '" + s + "'");
  }
}

}  // namespace

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != header.size()) {
    throw InvalidArgument("ResultTable: row has " + std::to_string(row.size()) +
                          " cells, header has " + std::to_string(header.size()));
  }
  if (row.empty() || !is_numeric(row.front())) {
    throw InvalidArgument("ResultTable: data rows must start with a numeric cell");
  }
  for (const auto& c : row) {
    if (const auto* s = std::get_if<std::string>(&c)) check_text_cell(*s);
  }
  rows.push_back(std::move(row));
}

void ResultTable::add_footer(std::vector<Cell> row) {
  if (row.size() != header.size()) {
    throw InvalidArgument("ResultTable: footer has " + std::to_string(row.size()) +
                          " cells, header has " + std::to_string(header.size()));
  }
  double ignored = 0.0;
  const auto* label = std::get_if<std::string>(&row.front());
  if (label == nullptr || parse_double(*label, ignored)) {
    throw InvalidArgument("ResultTable: footer rows must start with a text label");
  }
  for (const auto& c : row) {
    if (const auto* s = std::get_if<std::string>(&c)) check_text_cell(*s);
  }
  footer.push_back(std::move(row));
}

std::string ResultTable::to_csv() const {
  std::string out;
  append_line(out, header);
  for (const auto* block : {&rows, &footer}) {
    for (const auto& row : *block) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (const auto& c : row) cells.push_back(render(c));
      append_line(out, cells);
    }
  }
  return out;
}

void ResultTable::write_csv(const std::filesystem::path& path) const {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + path.string() + "' for writing");
  const std::string text = to_csv();
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw Error("failed writing '" + path.string() + "'");
}

ResultTable ResultTable::from_csv(std::string_view text) {
  ResultTable table;
  bool have_header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!have_header) {
      for (auto field : split(line)) table.header.emplace_back(field);
      have_header = true;
      continue;
    }
    std::vector<Cell> row;
    for (auto field : split(line)) {
      double value = 0.0;
      if (parse_double(field, value)) {
        row.emplace_back(value);
      } else {
        row.emplace_back(std::string(field));
      }
    }
    if (!row.empty() && is_numeric(row.front())) {
      if (!table.footer.empty()) throw InvalidArgument("ResultTable: data row after footer");
      table.add_row(std::move(row));
    } else {
      table.add_footer(std::move(row));
    }
  }
  if (!have_header) throw InvalidArgument("ResultTable: empty input");
  return table;
}

std::size_t ResultTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InvalidArgument("ResultTable: no column '" + std::string(name) + "'");
}

const Cell& ResultTable::cell(std::size_t row, std::string_view column_name) const {
  return rows.at(row).at(column(column_name));
}

double ResultTable::number(std::size_t row, std::string_view column_name) const {
  const Cell& c = cell(row, column_name);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  throw InvalidArgument("ResultTable: cell in column '" + std::string(column_name) +
                        "' is not numeric");
}

}  // namespace purdyn
