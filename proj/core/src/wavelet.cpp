#include "bgshrink/wavelet.hpp"

#include <algorithm>
#include <stdexcept>

namespace bgshrink::wavelet {

namespace {

constexpr std::size_t kTaps = kDb5Lowpass.size();

const std::array<double, kTaps>& highpass() {
  static const std::array<double, kTaps> g = db5_highpass();
  return g;
}

void check_dyadic(std::size_t rows, std::size_t cols, int levels) {
  if (levels < 1) throw std::invalid_argument("wavelet: levels must be >= 1");
  if (levels > 30) throw std::invalid_argument("wavelet: too many levels");
  const std::size_t block = std::size_t{1} << levels;
  if (rows == 0 || cols == 0 || rows % block != 0 || cols % block != 0) {
    throw std::invalid_argument("wavelet: image dimensions must be divisible by 2^levels");
  }
}

}  // namespace

std::array<double, 10> db5_highpass() {
  std::array<double, kTaps> g{};
  for (std::size_t j = 0; j < kTaps; ++j) {
    const double h = kDb5Lowpass[kTaps - 1 - j];
    g[j] = (j % 2 == 0) ? h : -h;
  }
  return g;
}

void analyze_line(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size();
  const std::size_t half = n / 2;
  const auto& h = kDb5Lowpass;
  const auto& g = highpass();
  for (std::size_t k = 0; k < half; ++k) {
    double a = 0.0;
    double d = 0.0;
    for (std::size_t j = 0; j < kTaps; ++j) {
      const double x = in[(2 * k + j) % n];
      a += h[j] * x;
      d += g[j] * x;
    }
    out[k] = a;
    out[half + k] = d;
  }
}

void synthesize_line(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size();
  const std::size_t half = n / 2;
  const auto& h = kDb5Lowpass;
  const auto& g = highpass();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    const double a = in[k];
    const double d = in[half + k];
    for (std::size_t j = 0; j < kTaps; ++j) {
      out[(2 * k + j) % n] += h[j] * a + g[j] * d;
    }
  }
}

void forward_2d(std::span<const double> image, std::span<double> coeffs, std::size_t rows,
                std::size_t cols, int levels) {
  check_dyadic(rows, cols, levels);
  if (image.size() != rows * cols || coeffs.size() != rows * cols) {
    throw std::invalid_argument("wavelet::forward_2d: buffer size mismatch");
  }
  std::copy(image.begin(), image.end(), coeffs.begin());
  std::vector<double> line(std::max(rows, cols));
  std::vector<double> tmp(std::max(rows, cols));
  std::size_t r = rows;
  std::size_t c = cols;
  for (int level = 0; level < levels; ++level) {
    for (std::size_t i = 0; i < r; ++i) {
      std::span<double> row(coeffs.data() + i * cols, c);
      std::copy(row.begin(), row.end(), line.begin());
      analyze_line(std::span<const double>(line.data(), c), row);
    }
    for (std::size_t j = 0; j < c; ++j) {
      for (std::size_t i = 0; i < r; ++i) line[i] = coeffs[i * cols + j];
      analyze_line(std::span<const double>(line.data(), r), std::span<double>(tmp.data(), r));
      for (std::size_t i = 0; i < r; ++i) coeffs[i * cols + j] = tmp[i];
    }
    r /= 2;
    c /= 2;
  }
}

void inverse_2d(std::span<const double> coeffs, std::span<double> image, std::size_t rows,
                std::size_t cols, int levels) {
  check_dyadic(rows, cols, levels);
  if (image.size() != rows * cols || coeffs.size() != rows * cols) {
    throw std::invalid_argument("wavelet::inverse_2d: buffer size mismatch");
  }
  std::copy(coeffs.begin(), coeffs.end(), image.begin());
  std::vector<double> line(std::max(rows, cols));
  std::vector<double> tmp(std::max(rows, cols));
  for (int level = levels - 1; level >= 0; --level) {
    const std::size_t r = rows >> level;
    const std::size_t c = cols >> level;
    for (std::size_t j = 0; j < c; ++j) {
      for (std::size_t i = 0; i < r; ++i) line[i] = image[i * cols + j];
      synthesize_line(std::span<const double>(line.data(), r), std::span<double>(tmp.data(), r));
      for (std::size_t i = 0; i < r; ++i) image[i * cols + j] = tmp[i];
    }
    for (std::size_t i = 0; i < r; ++i) {
      std::span<double> row(image.data() + i * cols, c);
      std::copy(row.begin(), row.end(), line.begin());
      synthesize_line(std::span<const double>(line.data(), c), row);
    }
  }
}

}  // namespace bgshrink::wavelet
