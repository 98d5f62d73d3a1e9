#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace bagcheck {

/// Real with 17 significant digits; always round-trips.
std::string format_real(double x);

/// Shortest %g form that round-trips; used for labels.
std::string format_shortest(double x);

/// In-memory CSV table: header plus rows of equal width.
class CsvTable {
 public:
  using Cell = std::variant<double, long long, std::string>;

  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  /// Throws std::invalid_argument if the row width differs from the header.
  void add_row(std::vector<Cell> row);

  /// Index of a header column; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
  double real(std::size_t row, const std::string& name) const;

  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

/// Writes to `path`, or to stdout when path is empty or "-". Throws
/// std::runtime_error naming the path on I/O failure.
void write_csv(const CsvTable& table, const std::string& path);

}  // namespace bagcheck
