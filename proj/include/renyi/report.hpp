#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace renyi {

/// A cell that deliberately carries no number, with the reason.
struct Missing {
  std::string tag;
  friend bool operator==(const Missing&, const Missing&) = default;
};

using Cell = std::variant<double, std::int64_t, std::string, Missing>;

/// Column-named rows plus a free-form metadata block. Real cells must be
/// finite; anything else has to be recorded as Missing.
class ReportTable {
 public:
  ReportTable() = default;
  explicit ReportTable(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);

  [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
  [[nodiscard]] const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t column_index(const std::string& name) const;
  /// Real value of a cell; throws if the cell is not numeric.
  [[nodiscard]] double number(std::size_t row, const std::string& column) const;

  nlohmann::json& meta() noexcept { return meta_; }
  [[nodiscard]] const nlohmann::json& meta() const noexcept { return meta_; }

  /// Header row, '#'-prefixed metadata lines before it, RFC 4180 quoting.
  void write_csv(std::ostream& out) const;
  /// {"meta": {...}, "rows": [{column: value, ...}, ...]}.
  void write_json(std::ostream& out) const;

  /// Compares columns and rows bit-for-bit; metadata is ignored.
  [[nodiscard]] bool same_data(const ReportTable& other) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  nlohmann::json meta_ = nlohmann::json::object();
};

std::string csv_escape(const std::string& field);

}  // namespace renyi
