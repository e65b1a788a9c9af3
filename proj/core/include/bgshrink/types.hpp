#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bgshrink {

/// Image geometry for a flattened row-major signal.
struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Transform-domain vector (representation x, or analysis coefficients beta).
struct Coeffs {
  std::vector<double> values;

  Coeffs() = default;
  explicit Coeffs(std::size_t m) : values(m, 0.0) {}
  explicit Coeffs(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t k) { return values[k]; }
  double operator[](std::size_t k) const { return values[k]; }
  std::span<const double> view() const { return values; }
  std::span<double> view() { return values; }
};

/// Sample-domain vector (y, w, v). 2-D signals carry their shape.
struct Signal {
  std::vector<double> values;
  std::optional<Shape> shape;

  Signal() = default;
  explicit Signal(std::vector<double> v, std::optional<Shape> s = std::nullopt);

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::span<const double> view() const { return values; }
  std::span<double> view() { return values; }
};

/// Indicator of the atoms taking part in a representation.
struct SupportMask {
  std::vector<std::uint8_t> included;

  SupportMask() = default;
  explicit SupportMask(std::size_t m) : included(m, 0) {}

  /// Mask from the low m bits of `bits` (bit k set <=> atom k included).
  static SupportMask from_bits(std::uint64_t bits, std::size_t m);

  std::size_t size() const { return included.size(); }
  bool contains(std::size_t k) const { return included[k] != 0; }
  void set(std::size_t k, bool on) { included[k] = on ? 1 : 0; }
  std::size_t count() const;
  std::uint64_t to_bits() const;

  friend bool operator==(const SupportMask&, const SupportMask&) = default;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);

}  // namespace bgshrink
