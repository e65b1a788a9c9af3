#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bgshrink/types.hpp"

namespace bgshrink {

enum class DictKind { identity, hadamard, dct, db5_2d, random_orthogonal, explicit_matrix };

std::string_view to_string(DictKind kind);
DictKind parse_dict_kind(std::string_view name);

/// One wavelet subband (or the single trivial band of a non-wavelet dictionary).
struct Band {
  std::string id;
  /// Decomposition level, 1 = finest. The approximation band carries the
  /// deepest level.
  int level = 0;
  bool approximation = false;
  std::vector<std::size_t> indices;

  std::size_t size() const { return indices.size(); }
};

/// Ordered partition of the coefficient indices into bands.
struct BandLayout {
  std::vector<Band> bands;

  std::size_t band_count() const { return bands.size(); }
  std::size_t total() const;
  /// Throws std::invalid_argument unless the bands partition [0, m).
  void validate(std::size_t m) const;
  /// band_of[k] = index of the band containing coefficient k.
  std::vector<std::size_t> band_of(std::size_t m) const;
  /// Gathers the coefficients of band b.
  std::vector<double> gather(std::span<const double> coeffs, std::size_t b) const;
};

namespace detail {
class Transform {
 public:
  virtual ~Transform() = default;
  virtual void analyze(std::span<const double> y, std::span<double> beta) const = 0;
  virtual void synthesize(std::span<const double> x, std::span<double> w) const = 0;
};
}  // namespace detail

/// Square orthogonal dictionary D (columns are atoms, D^T D = I).
/// Immutable after construction; copies share the underlying transform.
class Dictionary {
 public:
  static Dictionary identity(std::size_t n);
  static Dictionary hadamard(std::size_t n);
  static Dictionary dct(std::size_t n);
  /// Separable periodized Daubechies-5 wavelet, Mallat layout, `levels` levels.
  static Dictionary db5_2d(std::size_t rows, std::size_t cols, int levels);
  /// Orthonormalized seeded Gaussian matrix.
  static Dictionary random_orthogonal(std::size_t n, std::uint64_t seed);
  /// Wraps an explicit square matrix; throws unless it is orthogonal to 1e-10.
  static Dictionary explicit_matrix(Eigen::MatrixXd d);

  DictKind kind() const { return kind_; }
  std::size_t length() const { return n_; }
  std::optional<Shape> shape() const { return shape_; }
  int levels() const { return levels_; }

  /// beta = D^T y.
  Coeffs analyze(const Signal& y) const;
  /// w = D x.
  Signal synthesize(const Coeffs& x) const;

  void analyze(std::span<const double> y, std::span<double> beta) const;
  void synthesize(std::span<const double> x, std::span<double> w) const;

  /// Wavelet subbands for db5-2d; a single band "all" otherwise.
  BandLayout band_layout() const;

  /// Dense n x n realization, column k = synthesize(e_k).
  Eigen::MatrixXd matrix() const;

 private:
  Dictionary(DictKind kind, std::size_t n, std::shared_ptr<const detail::Transform> t);

  DictKind kind_;
  std::size_t n_;
  std::optional<Shape> shape_;
  int levels_ = 0;
  std::shared_ptr<const detail::Transform> transform_;
};

/// Band layout of an L-level Mallat decomposition of a rows x cols image:
/// level-1 (HL, LH, HH), level-2 (...), ..., then the approximation band.
BandLayout wavelet_band_layout(std::size_t rows, std::size_t cols, int levels);

}  // namespace bgshrink
