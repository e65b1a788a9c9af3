#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bgshrink/bgshrink.hpp"

using namespace bgshrink;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  Rng rng(SeedKey{seed}, Stream::test);
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<Dictionary> all_kinds() {
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(4, 4);
  q.block(0, 0, 2, 2) << std::sqrt(0.5), -std::sqrt(0.5), std::sqrt(0.5), std::sqrt(0.5);
  return {Dictionary::identity(16),          Dictionary::hadamard(16),
          Dictionary::dct(16),               Dictionary::db5_2d(16, 16, 2),
          Dictionary::db5_2d(8, 32, 3),      Dictionary::random_orthogonal(12, 5),
          Dictionary::explicit_matrix(q)};
}

}  // namespace

TEST_CASE("dictionary kind names round trip") {
  for (DictKind k : {DictKind::identity, DictKind::hadamard, DictKind::dct, DictKind::db5_2d,
                     DictKind::random_orthogonal, DictKind::explicit_matrix}) {
    CHECK(parse_dict_kind(to_string(k)) == k);
  }
  CHECK(to_string(DictKind::db5_2d) == "db5-2d");
  CHECK_THROWS(parse_dict_kind("haar"));
}

TEST_CASE("identity analysis is the identity") {
  const Dictionary d = Dictionary::identity(4);
  const Signal y(std::vector<double>{1, 2, 3, 4});
  CHECK(d.analyze(y).values == y.values);
}

TEST_CASE("hadamard of e_1 has entries +-1/sqrt(8)") {
  const Dictionary d = Dictionary::hadamard(8);
  std::vector<double> e(8, 0.0);
  e[0] = 1.0;
  const Coeffs b = d.analyze(Signal(e));
  for (double v : b.values) CHECK(std::abs(std::abs(v) - 1.0 / std::sqrt(8.0)) <= 1e-15);
  CHECK_THROWS(Dictionary::hadamard(12));
}

TEST_CASE("every kind is unitary") {
  for (const Dictionary& d : all_kinds()) {
    CAPTURE(to_string(d.kind()));
    const auto u = random_vector(d.length(), 1);
    const auto v = random_vector(d.length(), 2);
    const Coeffs bu = d.analyze(Signal(u));
    const Coeffs bv = d.analyze(Signal(v));
    CHECK(std::abs(dot(bu.values, bv.values) - dot(u, v)) <= 1e-9 * std::max(1.0, std::abs(dot(u, v))));
    CHECK(std::abs(std::sqrt(dot(bu.values, bu.values)) / std::sqrt(dot(u, u)) - 1.0) <= 1e-10);
    const Signal back = d.synthesize(bu);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(back[i] - u[i]) <= 1e-10);
    const Coeffs again = d.analyze(d.synthesize(Coeffs(v)));
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(again[i] - v[i]) <= 1e-10);
    const Coeffs zero = d.analyze(Signal(std::vector<double>(d.length(), 0.0)));
    for (double z : zero.values) CHECK(z == 0.0);
  }
}

TEST_CASE("synthesis of e_k is a unit-norm column") {
  const Dictionary d = Dictionary::db5_2d(16, 16, 2);
  for (std::size_t k : {0UL, 17UL, 200UL, 255UL}) {
    Coeffs e(d.length());
    e[k] = 1.0;
    const Signal col = d.synthesize(e);
    CHECK(std::abs(dot(col.values, col.values) - 1.0) <= 1e-12);
  }
}

TEST_CASE("random-orthogonal synthesis equals the dense product") {
  const Dictionary d = Dictionary::random_orthogonal(6, 17);
  const Eigen::MatrixXd m = d.matrix();
  const auto x = random_vector(6, 3);
  const Eigen::VectorXd ref = m * Eigen::Map<const Eigen::VectorXd>(x.data(), 6);
  const Signal w = d.synthesize(Coeffs(x));
  for (int i = 0; i < 6; ++i) CHECK(std::abs(w[static_cast<std::size_t>(i)] - ref(i)) <= 1e-14);
  CHECK(d.matrix().isApprox(Dictionary::random_orthogonal(6, 17).matrix(), 0.0));
}

TEST_CASE("explicit matrix must be orthogonal") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0.1, 0, 1;
  CHECK_THROWS_AS(Dictionary::explicit_matrix(bad), std::invalid_argument);
  CHECK_THROWS(Dictionary::explicit_matrix(Eigen::MatrixXd::Identity(2, 3)));
}

TEST_CASE("db5 filter is the orthonormal Daubechies-5 lowpass") {
  double sum = 0.0;
  double energy = 0.0;
  for (double h : wavelet::kDb5Lowpass) {
    sum += h;
    energy += h * h;
  }
  CHECK(std::abs(sum - std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(energy - 1.0) <= 1e-15);
  // Double-shift orthogonality and five vanishing moments of the highpass.
  const auto& h = wavelet::kDb5Lowpass;
  for (std::size_t s = 2; s < 10; s += 2) {
    double acc = 0.0;
    for (std::size_t j = 0; j + s < 10; ++j) acc += h[j] * h[j + s];
    CHECK(std::abs(acc) <= 1e-15);
  }
  const auto g = wavelet::db5_highpass();
  for (int p = 0; p < 5; ++p) {
    double m = 0.0;
    for (std::size_t j = 0; j < 10; ++j) m += g[j] * std::pow(static_cast<double>(j), p);
    CHECK(std::abs(m) <= 1e-9);
  }
}

TEST_CASE("db5 explicit matrix is orthogonal on small dyadic sizes") {
  for (auto [r, c, l] : std::vector<std::tuple<std::size_t, std::size_t, int>>{
           {2, 2, 1}, {4, 4, 2}, {8, 8, 3}, {4, 16, 2}, {8, 8, 1}}) {
    const Eigen::MatrixXd m = Dictionary::db5_2d(r, c, l).matrix();
    const double dev = (m.transpose() * m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
    CAPTURE(r);
    CAPTURE(c);
    CHECK(dev <= 1e-10);
  }
}

TEST_CASE("db5 analysis of a constant image keeps energy in the approximation band") {
  const Dictionary d = Dictionary::db5_2d(32, 32, 3);
  const Coeffs b = d.analyze(Signal(std::vector<double>(1024, 7.0), Shape{32, 32}));
  const BandLayout layout = d.band_layout();
  double detail = 0.0;
  double approx = 0.0;
  for (const Band& band : layout.bands) {
    for (std::size_t k : band.indices) (band.approximation ? approx : detail) += b[k] * b[k];
  }
  CHECK(detail <= 1e-18 * approx);
  CHECK(std::abs(approx - 49.0 * 1024) <= 1e-8);
}

TEST_CASE("wavelet band layouts") {
  CHECK(wavelet_band_layout(2, 2, 1).band_count() == 4);
  for (const Band& b : wavelet_band_layout(2, 2, 1).bands) CHECK(b.size() == 1);
  CHECK(Dictionary::db5_2d(128, 128, 3).band_layout().band_count() == 10);

  const BandLayout l = wavelet_band_layout(64, 64, 2);
  REQUIRE(l.band_count() == 7);
  const std::vector<std::size_t> sizes{1024, 1024, 1024, 256, 256, 256, 256};
  for (std::size_t b = 0; b < 7; ++b) CHECK(l.bands[b].size() == sizes[b]);
  CHECK(l.total() == 4096);
  CHECK(l.bands[6].approximation);
  CHECK(l.bands[0].id == "L1-HL");
  CHECK(l.bands[6].id == "A2");

  for (int levels = 1; levels <= 4; ++levels) {
    const BandLayout lay = wavelet_band_layout(32, 64, levels);
    CHECK(lay.band_count() == static_cast<std::size_t>(3 * levels + 1));
    CHECK_NOTHROW(lay.validate(32 * 64));
    const auto owner = lay.band_of(32 * 64);
    CHECK(owner.size() == 32 * 64);
  }
  CHECK_THROWS(wavelet_band_layout(12, 16, 3));
  CHECK_THROWS(Dictionary::db5_2d(12, 16, 3));
  CHECK(Dictionary::dct(8).band_layout().band_count() == 1);
}

TEST_CASE("band layout validation catches overlaps and gaps") {
  BandLayout l;
  l.bands.push_back({"a", 1, false, {0, 1}});
  l.bands.push_back({"b", 1, false, {1, 2}});
  CHECK_THROWS(l.validate(3));
  l.bands[1].indices = {2};
  CHECK_THROWS(l.validate(4));
  CHECK_NOTHROW(l.validate(3));
}

TEST_CASE("analysis rejects mismatched lengths") {
  const Dictionary d = Dictionary::dct(8);
  CHECK_THROWS(d.analyze(Signal(std::vector<double>(7, 0.0))));
  CHECK_THROWS(d.synthesize(Coeffs(9)));
}

namespace {

// One-level periodized analysis matrix built directly from the filter taps.
Eigen::MatrixXd analysis_matrix_1d(std::size_t n) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const auto& h = wavelet::kDb5Lowpass;
  for (std::size_t k = 0; k < n / 2; ++k) {
    for (std::size_t j = 0; j < 10; ++j) {
      const auto col = static_cast<Eigen::Index>((2 * k + j) % n);
      const double g = (j % 2 == 0 ? 1.0 : -1.0) * h[9 - j];
      w(static_cast<Eigen::Index>(k), col) += h[j];
      w(static_cast<Eigen::Index>(n / 2 + k), col) += g;
    }
  }
  return w;
}

// Mallat analysis operator on row-major images: per level, X <- A X B^T on the
// top-left block, as a Kronecker product padded with the identity.
Eigen::MatrixXd mallat_matrix(std::size_t rows, std::size_t cols, int levels) {
  const auto n = static_cast<Eigen::Index>(rows * cols);
  Eigen::MatrixXd total = Eigen::MatrixXd::Identity(n, n);
  for (int l = 0; l < levels; ++l) {
    const std::size_t r = rows >> l;
    const std::size_t c = cols >> l;
    const Eigen::MatrixXd a = analysis_matrix_1d(r);
    const Eigen::MatrixXd b = analysis_matrix_1d(c);
    Eigen::MatrixXd step = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        const auto out = static_cast<Eigen::Index>(i * cols + j);
        step(out, out) = 0.0;
        for (std::size_t p = 0; p < r; ++p) {
          for (std::size_t q = 0; q < c; ++q) {
            step(out, static_cast<Eigen::Index>(p * cols + q)) =
                a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) *
                b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(q));
          }
        }
      }
    }
    total = step * total;
  }
  return total;
}

}  // namespace

TEST_CASE("db5 transform matches an independent Kronecker construction") {
  for (auto [r, c, l] : std::vector<std::tuple<std::size_t, std::size_t, int>>{
           {8, 8, 2}, {16, 8, 3}, {4, 4, 1}}) {
    const Eigen::MatrixXd ref = mallat_matrix(r, c, l);
    const Eigen::MatrixXd d = Dictionary::db5_2d(r, c, l).matrix();
    CHECK((ref - d.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    // Constant image: every detail coefficient vanishes under the reference too.
    const Eigen::VectorXd beta = ref * Eigen::VectorXd::Constant(static_cast<Eigen::Index>(r * c), 3.0);
    const BandLayout lay = wavelet_band_layout(r, c, l);
    for (const Band& band : lay.bands) {
      if (band.approximation) continue;
      for (std::size_t k : band.indices) CHECK(std::abs(beta(static_cast<Eigen::Index>(k))) <= 1e-12);
    }
  }
}
