#include "bgshrink/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bgshrink {

Signal::Signal(std::vector<double> v, std::optional<Shape> s)
    : values(std::move(v)), shape(s) {
  if (shape && shape->size() != values.size()) {
    throw std::invalid_argument("Signal: shape does not match sample count");
  }
}

SupportMask SupportMask::from_bits(std::uint64_t bits, std::size_t m) {
  if (m > 64) throw std::invalid_argument("SupportMask::from_bits: m > 64");
  SupportMask s(m);
  for (std::size_t k = 0; k < m; ++k) s.included[k] = (bits >> k) & 1U;
  return s;
}

std::size_t SupportMask::count() const {
  return static_cast<std::size_t>(std::count(included.begin(), included.end(), 1));
}

std::uint64_t SupportMask::to_bits() const {
  if (size() > 64) throw std::logic_error("SupportMask::to_bits: more than 64 atoms");
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < size(); ++k) {
    if (included[k]) bits |= std::uint64_t{1} << k;
  }
  return bits;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("squared_distance: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double squared_norm(std::span<const double> a) {
  return std::inner_product(a.begin(), a.end(), a.begin(), 0.0);
}

}  // namespace bgshrink
