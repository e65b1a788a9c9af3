#include "bgshrink_app/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace bgshrink::app {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Next whitespace-delimited token, skipping '#' comments to end of line.
  std::string token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
           bytes_[pos_] != '#') {
      ++pos_;
    }
    if (start == pos_) throw std::runtime_error("pgm: truncated header");
    return std::string(bytes_.substr(start, pos_ - start));
  }

  std::size_t number() {
    const std::string t = token();
    if (!std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw std::runtime_error("pgm: expected an integer, got '" + t + "'");
    }
    return std::stoul(t);
  }

  // The single whitespace byte separating the header from raster data.
  void end_of_header() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw std::runtime_error("pgm: missing whitespace after header");
    }
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

ImageBuffer parse_pgm(std::string_view bytes) {
  HeaderReader h(bytes);
  const std::string magic = h.token();
  if (magic != "P5" && magic != "P2") throw std::runtime_error("pgm: unsupported magic '" + magic + "'");
  ImageBuffer img;
  img.width = h.number();
  img.height = h.number();
  const std::size_t maxval = h.number();
  if (img.width == 0 || img.height == 0) throw std::runtime_error("pgm: empty image");
  if (maxval == 0 || maxval > 65535) throw std::runtime_error("pgm: maxval out of range");
  const std::size_t count = img.width * img.height;
  const double scale = 255.0 / static_cast<double>(maxval);
  img.pixels.resize(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t v = h.number();
      if (v > maxval) throw std::runtime_error("pgm: pixel exceeds maxval");
      img.pixels[i] = static_cast<double>(v) * scale;
    }
    return img;
  }
  h.end_of_header();
  const std::size_t bpp = maxval < 256 ? 1 : 2;
  const std::size_t start = h.position();
  if (bytes.size() < start + count * bpp) throw std::runtime_error("pgm: truncated raster");
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t v = static_cast<unsigned char>(bytes[start + i * bpp]);
    if (bpp == 2) v = (v << 8) | static_cast<unsigned char>(bytes[start + i * bpp + 1]);
    if (v > maxval) throw std::runtime_error("pgm: pixel exceeds maxval");
    img.pixels[i] = static_cast<double>(v) * scale;
  }
  return img;
}

ImageBuffer read_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

unsigned char quantize_pixel(double v) {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 255.0) return 255;
  return static_cast<unsigned char>(std::round(v));
}

std::string encode_pgm(const ImageBuffer& image) {
  if (image.pixels.size() != image.width * image.height) {
    throw std::invalid_argument("encode_pgm: pixel count does not match dimensions");
  }
  std::string out = fmt::format("P5\n{} {}\n255\n", image.width, image.height);
  out.reserve(out.size() + image.pixels.size());
  for (double v : image.pixels) out.push_back(static_cast<char>(quantize_pixel(v)));
  return out;
}

void write_pgm(const std::filesystem::path& path, const ImageBuffer& image) {
  write_text(path, encode_pgm(image));
}

double psnr(const std::vector<double>& reference, const std::vector<double>& test) {
  if (reference.size() != test.size() || reference.empty()) {
    throw std::invalid_argument("psnr: size mismatch");
  }
  double se = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = reference[i] - test[i];
    se += d * d;
  }
  const double mse = se / static_cast<double>(reference.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

CsvTable::CsvTable(std::string schema, std::vector<std::string> columns)
    : schema_(std::move(schema)), columns_(std::move(columns)) {}

void CsvTable::note(std::string line) { notes_.push_back(std::move(line)); }

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw std::invalid_argument("CsvTable: row width mismatch");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  out << "# schema: " << schema_ << '\n';
  for (const std::string& n : notes_) out << "# " << n << '\n';
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

std::string fmt_num(double v) { return fmt::format("{}", v); }

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string svg_line_chart(const ChartSpec& spec, const std::vector<Series>& series) {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  const double left = 70.0;
  const double right = 170.0;
  const double top = 40.0;
  const double bottom = 55.0;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;

  auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i]) || (spec.log_x && !(s.x[i] > 0.0))) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double x) { return left + (tx(x) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      spec.width, spec.height);
  out += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                     left + pw / 2, escape_xml(spec.title));
  out += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333\"/>\n", left,
      top, pw, ph);
  for (int i = 0; i <= 5; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 5.0;
    const double fy = ymin + (ymax - ymin) * i / 5.0;
    const double gx = left + pw * i / 5.0;
    const double gy = top + ph - ph * i / 5.0;
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"#ddd\"/>\n",
                       gx, top, top + ph);
    out += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>\n",
                       left, gy, left + pw);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n", gx,
                       top + ph + 16, spec.log_x ? std::pow(10.0, fx) : fx);
    out += fmt::format("<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3g}</text>\n", left - 6,
                       gy + 4, fy);
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", left + pw / 2,
                     spec.height - 12, escape_xml(spec.x_label));
  out += fmt::format(
      "<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">{1}</text>\n",
      top + ph / 2, escape_xml(spec.y_label));
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = kPalette[s % std::size(kPalette)];
    std::string pts;
    for (std::size_t i = 0; i < series[s].x.size() && i < series[s].y.size(); ++i) {
      if (!std::isfinite(series[s].y[i]) || (spec.log_x && !(series[s].x[i] > 0.0))) continue;
      pts += fmt::format("{:.2f},{:.2f} ", px(series[s].x[i]), py(series[s].y[i]));
    }
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\"{} points=\"{}\"/>\n",
                       colour, series[s].dashed ? " stroke-dasharray=\"6 4\"" : "", pts);
    const double ly = top + 14.0 + 18.0 * static_cast<double>(s);
    out += fmt::format(
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"{4}/>\n",
        left + pw + 10, ly, left + pw + 34, colour, series[s].dashed ? " stroke-dasharray=\"6 4\"" : "");
    out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", left + pw + 40, ly + 4,
                       escape_xml(series[s].name));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace bgshrink::app
