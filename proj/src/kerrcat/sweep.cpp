#include "kerrcat/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kerrcat/error.hpp"

namespace kerrcat {

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  fail(ErrorCode::InvalidArgument, "unknown output format '" + std::string(text) + "' (expected csv or json)");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  // avoid "-0" in goldens
  if (std::string_view(buf) == "-0") return "0";
  return buf;
}

SweepResult::SweepResult(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void SweepResult::add_row(std::vector<Cell> values, int error_code) {
  require(values.size() == columns_.size(), ErrorCode::InvalidArgument,
          "row has " + std::to_string(values.size()) + " cells, table has " + std::to_string(columns_.size()) +
              " columns");
  cells_.push_back(std::move(values));
  errors_.push_back(error_code);
}

const Cell& SweepResult::at(std::size_t row, std::size_t column) const { return cells_.at(row).at(column); }

double SweepResult::number(std::size_t row, std::size_t column) const {
  const Cell& c = at(row, column);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  fail(ErrorCode::InvalidArgument, "column '" + columns_.at(column) + "' is not numeric");
}

double SweepResult::number(std::size_t row, std::string_view column) const {
  return number(row, column_index(column));
}

std::size_t SweepResult::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == name) return i;
  fail(ErrorCode::InvalidArgument, "no column named '" + std::string(name) + "'");
}

std::vector<double> SweepResult::column_values(std::string_view name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows());
  for (std::size_t r = 0; r < rows(); ++r) out.push_back(number(r, c));
  return out;
}

void SweepResult::validate() const {
  for (std::size_t r = 0; r < rows(); ++r) {
    if (errors_[r] != 0) continue;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      const auto* d = std::get_if<double>(&cells_[r][c]);
      require(d == nullptr || std::isfinite(*d), ErrorCode::InvalidArgument,
              "non-finite value in column '" + columns_[c] + "' of row " + std::to_string(r) +
                  " without an error code");
    }
  }
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

std::string SweepResult::to_csv() const {
  std::ostringstream out;
  for (const auto& name : columns_) out << name << ',';
  out << "error_code\n";
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& c : cells_[r]) out << cell_text(c) << ',';
    out << errors_[r] << '\n';
  }
  return out.str();
}

nlohmann::ordered_json SweepResult::to_json(const nlohmann::ordered_json& metadata) const {
  nlohmann::ordered_json doc;
  doc["metadata"] = metadata;
  auto cols = columns_;
  cols.emplace_back("error_code");
  doc["columns"] = cols;
  auto rows_json = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& c : cells_[r]) row.push_back(cell_json(c));
    row.push_back(errors_[r]);
    rows_json.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows_json);
  return doc;
}

void SweepResult::write(const std::string& path, OutputFormat format, const nlohmann::ordered_json& metadata) const {
  if (format == OutputFormat::Csv)
    write_text_file(path, to_csv());
  else
    write_text_file(path, to_json(metadata).dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  require(static_cast<bool>(out), ErrorCode::Io, "failed writing '" + path + "'");
}

}  // namespace kerrcat
