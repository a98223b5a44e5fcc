#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace pw {

/// Shortest round-trip decimal with up to 17 significant digits, '.' decimal
/// point, locale-independent.
std::string format_double(double v);

/// Single-header-row CSV writer; all cells are numbers.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) { row(std::span<const double>(values)); }

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace pw
