#ifndef LRBSCHED_CSV_HPP
#define LRBSCHED_CSV_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include "lrbsched/errors.hpp"

namespace lrbsched {

/// Shortest decimal string that parses back to exactly `v`.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{}) throw NumericError("format_double: to_chars failed");
  return {buf, res.ptr};
}

using CsvCell = std::variant<double, std::int64_t, std::string>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<CsvCell> row) {
    detail::require_usage(row.size() == header_.size(), "CsvTable: row width differs from header");
    rows_.push_back(std::move(row));
  }

  [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }
  [[nodiscard]] const std::vector<std::vector<CsvCell>>& rows() const noexcept { return rows_; }

  void write(std::ostream& os) const {
    write_line(os, header_);
    for (const auto& row : rows_) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (const auto& cell : row) cells.push_back(to_text(cell));
      write_line(os, cells);
    }
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    write(os);
    return os.str();
  }

 private:
  static std::string to_text(const CsvCell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    return std::get<std::string>(cell);
  }

  static void write_line(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<CsvCell>> rows_;
};

}  // namespace lrbsched

#endif  // LRBSCHED_CSV_HPP
