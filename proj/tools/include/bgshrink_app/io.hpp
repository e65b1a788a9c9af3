#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bgshrink::app {

/// 8-bit grayscale image with pixel values on the [0, 255] scale.
struct ImageBuffer {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;  // row-major
};

/// Reads a binary (P5) or plain (P2) PGM. Header comments are skipped and
/// pixels are rescaled from [0, maxval] to [0, 255]. Throws std::runtime_error
/// on malformed input.
ImageBuffer read_pgm(const std::filesystem::path& path);
ImageBuffer parse_pgm(std::string_view bytes);

/// Rounds half away from zero and clips to [0, 255].
unsigned char quantize_pixel(double v);

/// Writes P5 with maxval 255 after quantize_pixel.
void write_pgm(const std::filesystem::path& path, const ImageBuffer& image);
std::string encode_pgm(const ImageBuffer& image);

/// 10 log10(255^2 / MSE).
double psnr(const std::vector<double>& reference, const std::vector<double>& test);

/// Rows of already-formatted cells with a versioned comment header line.
class CsvTable {
 public:
  CsvTable(std::string schema, std::vector<std::string> columns);

  /// Free-form "# key: value" comment lines written after the schema line.
  void note(std::string line);
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  void write(const std::filesystem::path& path) const;

  std::size_t rows() const { return rows_.size(); }

 private:
  std::string schema_;
  std::vector<std::string> columns_;
  std::vector<std::string> notes_;
  std::vector<std::vector<std::string>> rows_;
};

/// Shortest round-trip-stable decimal representation used in every CSV.
std::string fmt_num(double v);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  double width = 640.0;
  double height = 420.0;
};

/// Self-contained SVG line chart.
std::string svg_line_chart(const ChartSpec& spec, const std::vector<Series>& series);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace bgshrink::app
