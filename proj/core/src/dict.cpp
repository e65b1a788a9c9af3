#include "bgshrink/dict.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bgshrink/rng.hpp"
#include "bgshrink/wavelet.hpp"

namespace bgshrink {

namespace {

class IdentityTransform final : public detail::Transform {
 public:
  void analyze(std::span<const double> y, std::span<double> beta) const override {
    std::copy(y.begin(), y.end(), beta.begin());
  }
  void synthesize(std::span<const double> x, std::span<double> w) const override {
    std::copy(x.begin(), x.end(), w.begin());
  }
};

// Normalized Sylvester-Hadamard matrix; symmetric and involutory.
class HadamardTransform final : public detail::Transform {
 public:
  void analyze(std::span<const double> y, std::span<double> beta) const override {
    fwht(y, beta);
  }
  void synthesize(std::span<const double> x, std::span<double> w) const override {
    fwht(x, w);
  }

 private:
  static void fwht(std::span<const double> in, std::span<double> out) {
    const std::size_t n = in.size();
    std::copy(in.begin(), in.end(), out.begin());
    for (std::size_t len = 1; len < n; len <<= 1) {
      for (std::size_t i = 0; i < n; i += 2 * len) {
        for (std::size_t j = i; j < i + len; ++j) {
          const double a = out[j];
          const double b = out[j + len];
          out[j] = a + b;
          out[j + len] = a - b;
        }
      }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (double& v : out) v *= scale;
  }
};

class DenseTransform final : public detail::Transform {
 public:
  explicit DenseTransform(Eigen::MatrixXd d) : d_(std::move(d)) {}

  void analyze(std::span<const double> y, std::span<double> beta) const override {
    Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    Eigen::Map<Eigen::VectorXd> bv(beta.data(), static_cast<Eigen::Index>(beta.size()));
    bv.noalias() = d_.transpose() * yv;
  }
  void synthesize(std::span<const double> x, std::span<double> w) const override {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    Eigen::Map<Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(w.size()));
    wv.noalias() = d_ * xv;
  }

 private:
  Eigen::MatrixXd d_;
};

class WaveletTransform final : public detail::Transform {
 public:
  WaveletTransform(std::size_t rows, std::size_t cols, int levels)
      : rows_(rows), cols_(cols), levels_(levels) {}

  void analyze(std::span<const double> y, std::span<double> beta) const override {
    wavelet::forward_2d(y, beta, rows_, cols_, levels_);
  }
  void synthesize(std::span<const double> x, std::span<double> w) const override {
    wavelet::inverse_2d(x, w, rows_, cols_, levels_);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  int levels_;
};

void check_orthogonal(const Eigen::MatrixXd& d, double tol) {
  if (d.rows() != d.cols() || d.rows() == 0) {
    throw std::invalid_argument("Dictionary: matrix must be square and non-empty");
  }
  const Eigen::MatrixXd gram = d.transpose() * d;
  const double err =
      (gram - Eigen::MatrixXd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff();
  if (!(err <= tol)) {
    throw std::invalid_argument("Dictionary: matrix is not orthogonal (max |D^T D - I| = " +
                                std::to_string(err) + ")");
  }
}

void check_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string("Dictionary::") + what + ": length " +
                                std::to_string(got) + " does not match dictionary length " +
                                std::to_string(want));
  }
}

}  // namespace

std::string_view to_string(DictKind kind) {
  switch (kind) {
    case DictKind::identity: return "identity";
    case DictKind::hadamard: return "hadamard";
    case DictKind::dct: return "dct";
    case DictKind::db5_2d: return "db5-2d";
    case DictKind::random_orthogonal: return "random-orthogonal";
    case DictKind::explicit_matrix: return "explicit-matrix";
  }
  return "unknown";
}

DictKind parse_dict_kind(std::string_view name) {
  for (DictKind k : {DictKind::identity, DictKind::hadamard, DictKind::dct, DictKind::db5_2d,
                     DictKind::random_orthogonal, DictKind::explicit_matrix}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown dictionary kind: " + std::string(name));
}

std::size_t BandLayout::total() const {
  std::size_t n = 0;
  for (const Band& b : bands) n += b.size();
  return n;
}

void BandLayout::validate(std::size_t m) const {
  std::vector<std::uint8_t> seen(m, 0);
  for (const Band& b : bands) {
    for (std::size_t k : b.indices) {
      if (k >= m) throw std::invalid_argument("BandLayout: index out of range");
      if (seen[k]) throw std::invalid_argument("BandLayout: bands overlap");
      seen[k] = 1;
    }
  }
  if (total() != m) throw std::invalid_argument("BandLayout: bands do not cover all indices");
}

std::vector<std::size_t> BandLayout::band_of(std::size_t m) const {
  validate(m);
  std::vector<std::size_t> out(m);
  for (std::size_t b = 0; b < bands.size(); ++b) {
    for (std::size_t k : bands[b].indices) out[k] = b;
  }
  return out;
}

std::vector<double> BandLayout::gather(std::span<const double> coeffs, std::size_t b) const {
  std::vector<double> out;
  out.reserve(bands.at(b).size());
  for (std::size_t k : bands[b].indices) out.push_back(coeffs[k]);
  return out;
}

BandLayout wavelet_band_layout(std::size_t rows, std::size_t cols, int levels) {
  if (levels < 1) throw std::invalid_argument("wavelet_band_layout: levels must be >= 1");
  const std::size_t block = std::size_t{1} << levels;
  if (rows == 0 || cols == 0 || rows % block != 0 || cols % block != 0) {
    throw std::invalid_argument("wavelet_band_layout: dimensions must be divisible by 2^levels");
  }
  auto rect = [cols](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    std::vector<std::size_t> idx;
    idx.reserve((r1 - r0) * (c1 - c0));
    for (std::size_t i = r0; i < r1; ++i) {
      for (std::size_t j = c0; j < c1; ++j) idx.push_back(i * cols + j);
    }
    return idx;
  };
  BandLayout layout;
  for (int level = 1; level <= levels; ++level) {
    const std::size_t r = rows >> (level - 1);
    const std::size_t c = cols >> (level - 1);
    const std::size_t hr = r / 2;
    const std::size_t hc = c / 2;
    const std::string tag = "L" + std::to_string(level);
    layout.bands.push_back({tag + "-HL", level, false, rect(0, hr, hc, c)});
    layout.bands.push_back({tag + "-LH", level, false, rect(hr, r, 0, hc)});
    layout.bands.push_back({tag + "-HH", level, false, rect(hr, r, hc, c)});
  }
  layout.bands.push_back(
      {"A" + std::to_string(levels), levels, true, rect(0, rows >> levels, 0, cols >> levels)});
  return layout;
}

Dictionary::Dictionary(DictKind kind, std::size_t n, std::shared_ptr<const detail::Transform> t)
    : kind_(kind), n_(n), transform_(std::move(t)) {}

Dictionary Dictionary::identity(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Dictionary::identity: n must be positive");
  return Dictionary(DictKind::identity, n, std::make_shared<IdentityTransform>());
}

Dictionary Dictionary::hadamard(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("Dictionary::hadamard: size must be a power of two");
  }
  return Dictionary(DictKind::hadamard, n, std::make_shared<HadamardTransform>());
}

Dictionary Dictionary::dct(std::size_t n) {
  if (n == 0 || n > 4096) throw std::invalid_argument("Dictionary::dct: size must be in [1, 4096]");
  // Atom k is the k-th orthonormal DCT-II basis vector.
  Eigen::MatrixXd d(n, n);
  const double nn = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = (k == 0) ? std::sqrt(1.0 / nn) : std::sqrt(2.0 / nn);
    for (std::size_t i = 0; i < n; ++i) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          scale * std::cos(std::numbers::pi * (2.0 * static_cast<double>(i) + 1.0) *
                           static_cast<double>(k) / (2.0 * nn));
    }
  }
  return Dictionary(DictKind::dct, n, std::make_shared<DenseTransform>(std::move(d)));
}

Dictionary Dictionary::db5_2d(std::size_t rows, std::size_t cols, int levels) {
  // Validates the dyadic constraint.
  (void)wavelet_band_layout(rows, cols, levels);
  Dictionary d(DictKind::db5_2d, rows * cols,
               std::make_shared<WaveletTransform>(rows, cols, levels));
  d.shape_ = Shape{rows, cols};
  d.levels_ = levels;
  return d;
}

Dictionary Dictionary::random_orthogonal(std::size_t n, std::uint64_t seed) {
  if (n == 0 || n > 4096) {
    throw std::invalid_argument("Dictionary::random_orthogonal: size must be in [1, 4096]");
  }
  Rng rng(SeedKey{seed}, Stream::dictionary);
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a(ni, ni);
  for (Eigen::Index j = 0; j < ni; ++j) {
    for (Eigen::Index i = 0; i < ni; ++i) a(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(ni, ni);
  // Fix column signs so Q is a deterministic function of the Gaussian draw.
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < ni; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  check_orthogonal(q, 1e-10);
  return Dictionary(DictKind::random_orthogonal, n, std::make_shared<DenseTransform>(std::move(q)));
}

Dictionary Dictionary::explicit_matrix(Eigen::MatrixXd d) {
  check_orthogonal(d, 1e-10);
  const auto n = static_cast<std::size_t>(d.rows());
  return Dictionary(DictKind::explicit_matrix, n, std::make_shared<DenseTransform>(std::move(d)));
}

Coeffs Dictionary::analyze(const Signal& y) const {
  check_length(y.size(), n_, "analyze");
  Coeffs beta(n_);
  transform_->analyze(y.view(), beta.view());
  return beta;
}

Signal Dictionary::synthesize(const Coeffs& x) const {
  check_length(x.size(), n_, "synthesize");
  Signal w(std::vector<double>(n_, 0.0), shape_);
  transform_->synthesize(x.view(), w.view());
  return w;
}

void Dictionary::analyze(std::span<const double> y, std::span<double> beta) const {
  check_length(y.size(), n_, "analyze");
  check_length(beta.size(), n_, "analyze");
  transform_->analyze(y, beta);
}

void Dictionary::synthesize(std::span<const double> x, std::span<double> w) const {
  check_length(x.size(), n_, "synthesize");
  check_length(w.size(), n_, "synthesize");
  transform_->synthesize(x, w);
}

BandLayout Dictionary::band_layout() const {
  if (kind_ == DictKind::db5_2d) return wavelet_band_layout(shape_->rows, shape_->cols, levels_);
  Band all{"all", 1, true, {}};
  all.indices.resize(n_);
  for (std::size_t k = 0; k < n_; ++k) all.indices[k] = k;
  return BandLayout{{std::move(all)}};
}

Eigen::MatrixXd Dictionary::matrix() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd d(n, n);
  std::vector<double> e(n_, 0.0);
  std::vector<double> col(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    e[k] = 1.0;
    transform_->synthesize(e, col);
    e[k] = 0.0;
    for (std::size_t i = 0; i < n_; ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = col[i];
  }
  return d;
}

}  // namespace bgshrink
