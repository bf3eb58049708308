#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace kerrcat {

using Cell = std::variant<double, std::int64_t, std::string>;

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(std::string_view text);

/// Formats a double with 12 significant digits ("nan"/"inf" for non-finite).
std::string format_number(double value);

/// Rectangular table of sweep records. Every row carries an integer error
/// code (0 = ok); a non-finite number is only allowed in a row whose error
/// code is non-zero.
class SweepResult {
 public:
  SweepResult() = default;
  explicit SweepResult(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return cells_.size(); }

  void add_row(std::vector<Cell> values, int error_code = 0);

  const Cell& at(std::size_t row, std::size_t column) const;
  double number(std::size_t row, std::size_t column) const;
  double number(std::size_t row, std::string_view column) const;
  int error_code(std::size_t row) const { return errors_.at(row); }
  std::size_t column_index(std::string_view name) const;
  std::vector<double> column_values(std::string_view name) const;

  /// Throws InvalidArgument when a non-finite number sits in an ok row.
  void validate() const;

  /// Header row, then one line per record; the last column is "error_code".
  std::string to_csv() const;
  nlohmann::ordered_json to_json(const nlohmann::ordered_json& metadata = nlohmann::ordered_json::object()) const;
  void write(const std::string& path, OutputFormat format,
             const nlohmann::ordered_json& metadata = nlohmann::ordered_json::object()) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> cells_;
  std::vector<int> errors_;
};

/// Writes `text` to `path`, throwing Io on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace kerrcat
