#include "renyi/report.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "renyi/format.hpp"

namespace renyi {
namespace {

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_real(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return "NA:" + v.tag;
        }
      },
      cell);
}

nlohmann::json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Missing>) {
          return {{"missing", v.tag}};
        } else {
          return v;
        }
      },
      cell);
}

bool same_cell(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) {
    return std::bit_cast<std::uint64_t>(*x) == std::bit_cast<std::uint64_t>(std::get<double>(b));
  }
  return a == b;
}

}  // namespace

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ReportTable::ReportTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void ReportTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::logic_error("ReportTable: row has " + std::to_string(row.size()) +
                           " cells, expected " + std::to_string(columns_.size()));
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (const auto* v = std::get_if<double>(&row[i]); v != nullptr && !std::isfinite(*v)) {
      throw std::logic_error("ReportTable: non-finite value in column '" + columns_[i] +
                             "' must be tagged");
    }
  }
  rows_.push_back(std::move(row));
}

std::size_t ReportTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw std::out_of_range("ReportTable: no column '" + name + "'");
}

double ReportTable::number(std::size_t row, const std::string& column) const {
  const Cell& cell = rows_.at(row).at(column_index(column));
  if (const auto* v = std::get_if<double>(&cell)) return *v;
  if (const auto* v = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*v);
  throw std::runtime_error("ReportTable: cell '" + column + "' in row " + std::to_string(row) +
                           " is not numeric (" + cell_text(cell) + ")");
}

void ReportTable::write_csv(std::ostream& out) const {
  for (const auto& [key, value] : meta_.items()) {
    out << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    out << (i ? "," : "") << csv_escape(columns_[i]);
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_escape(cell_text(row[i]));
    }
    out << '\n';
  }
}

void ReportTable::write_json(std::ostream& out) const {
  nlohmann::json doc;
  doc["meta"] = meta_;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = cell_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

bool ReportTable::same_data(const ReportTable& other) const {
  if (columns_ != other.columns_ || rows_.size() != other.rows_.size()) return false;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (!same_cell(rows_[r][c], other.rows_[r][c])) return false;
    }
  }
  return true;
}

}  // namespace renyi
