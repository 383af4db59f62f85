#ifndef PAMPA_IO_HPP_
#define PAMPA_IO_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace pampa {

/// Locale-independent rendering with 17 significant digits.
std::string format_number(double v);

/// Minimal CSV writer: header row first, numbers through format_number.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(long long v);
  CsvWriter& operator<<(int v) { return *this << static_cast<long long>(v); }
  CsvWriter& operator<<(const std::string& s);
  void end_row();

 private:
  void sep();

  std::ofstream out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a header column; throws if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};

/// Reads a numeric CSV with a header row.
CsvTable read_csv(const std::filesystem::path& path);

// ---------------------------------------------------------------------------

struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // draw points instead of a line
};

/// Static line plot. Each series becomes one <g class="series"> element with
/// a data-name attribute and its raw coordinates in a data-x / data-y pair,
/// so structural comparisons do not depend on the drawing transform.
void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::string& y_label, const std::vector<SvgSeries>& series);

/// Series recovered from an SVG written by write_svg.
std::vector<SvgSeries> read_svg_series(const std::filesystem::path& path);

}  // namespace pampa

#endif  // PAMPA_IO_HPP_
