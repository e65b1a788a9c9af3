#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "bgshrink/bgshrink.hpp"

using namespace bgshrink;

namespace {

std::vector<double> planted_band(std::size_t n, double p, double sigma_i, double sigma, std::uint64_t seed) {
  const ModelParams params = ModelParams::homoscedastic(n, p, sigma_i, sigma);
  const SupportMask s = sample_support(params, seed);
  const Coeffs x = sample_coefficients(params, s, seed);
  return synthesize_observation(Dictionary::identity(n), x, sigma, seed).values;
}

std::vector<double> sorted_sq(const std::vector<double>& beta) {
  std::vector<double> sq;
  for (double b : beta) sq.push_back(b * b);
  std::sort(sq.begin(), sq.end(), std::greater<>());
  return sq;
}

}  // namespace

TEST_CASE("band objective conventions") {
  const std::vector<double> beta{3.0, -0.5, 1.0, 2.0, 0.1};
  const auto sq = sorted_sq(beta);
  CHECK(band_objective(0, sq, 0.5, 1.0) == 0.0);

  SUBCASE("full cardinality") {
    const double n = 5;
    const double e = 9 + 0.25 + 1 + 4 + 0.01;
    const double s2 = 0.25;
    const double sx2 = e / n - s2;
    const double expected = -(n / 2) * std::log((sx2 + s2) / s2) + sx2 / (s2 + sx2) * e / (2 * s2) - 0.3 * n;
    CHECK(band_objective(5, sq, 0.5, 0.3) == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("interior cardinality") {
    const double k = 2;
    const double n = 5;
    const double e = 13;
    const double s2 = 0.25;
    const double sx2 = e / k - s2;
    const double expected = -(k / 2) * std::log((sx2 + s2) / s2) + k * std::log(k / n) +
                            (n - k) * std::log(1 - k / n) + sx2 / (s2 + sx2) * e / (2 * s2) - 0.1 * k;
    CHECK(band_objective(2, sq, 0.5, 0.1) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(band_objective(2, 13.0, 5, 0.5, 0.1) == band_objective(2, sq, 0.5, 0.1));
  }
  SUBCASE("depends only on the top-k energy") {
    const std::vector<double> perm{2.0, 0.1, -3.0, 1.0, -0.5};
    CHECK(band_objective(3, sorted_sq(perm), 0.5, 0.2) == band_objective(3, sq, 0.5, 0.2));
  }
  SUBCASE("sigma floor when the top-k energy is below the noise") {
    CHECK(band_sigma_hat(2, 0.01, 1.0) == doctest::Approx(kSigmaFloor * 1.0));
    CHECK(std::isfinite(band_objective(2, 0.01, 5, 1.0, 0.0)));
  }
  CHECK_THROWS(band_objective(6, sq, 0.5, 0.0));
}

TEST_CASE("estimate_band") {
  SUBCASE("p_hat is k_star / n") {
    const auto beta = planted_band(100, 0.1, 3.0, 0.1, 2);
    const BandEstimate e = estimate_band(beta, 0.1, 0.0);
    CHECK(e.p_hat == static_cast<double>(e.k_star) / 100.0);
  }
  SUBCASE("the sweep returns the global maximizer") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto beta = planted_band(500, 0.3, 1.5, 0.4, seed);
      const BandEstimate e = estimate_band(beta, 0.4, 0.5);
      const auto sq = sorted_sq(beta);
      for (std::size_t k = 0; k <= 500; ++k) CHECK(band_objective(k, sq, 0.4, 0.5) <= e.objective);
      CHECK(band_objective(e.k_star, sq, 0.4, 0.5) == doctest::Approx(e.objective).epsilon(1e-12));
    }
  }
  SUBCASE("planted band recovery") {
    const auto beta = planted_band(4096, 0.2, 2.0, 0.1, 5);
    const BandEstimate e = estimate_band(beta, 0.1, 0.0);
    CHECK(std::abs(e.p_hat - 0.2) <= 0.05);
    CHECK(std::abs(e.sigma_hat / 2.0 - 1.0) <= 0.10);
  }
  SUBCASE("pure-noise bands stay nearly empty") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      Rng rng(SeedKey{seed}, Stream::noise);
      std::vector<double> beta(1024);
      for (double& b : beta) b = rng.normal();
      const BandEstimate e = estimate_band(beta, 1.0, 2.0);
      CHECK(static_cast<double>(e.k_star) / 1024.0 < 0.05);
    }
  }
  SUBCASE("larger lambda never adds atoms") {
    const auto beta = planted_band(2048, 0.15, 1.0, 0.5, 9);
    std::size_t prev = 2049;
    for (double lambda = 0.0; lambda <= 8.0; lambda += 0.25) {
      const BandEstimate e = estimate_band(beta, 0.5, lambda);
      CHECK(e.k_star <= prev);
      prev = e.k_star;
    }
  }
  CHECK_THROWS(estimate_band(std::vector<double>{}, 1.0, 0.0));
  CHECK_THROWS(estimate_band(std::vector<double>{1.0}, 0.0, 0.0));
}

TEST_CASE("lambda schedule") {
  const BandLayout layout = wavelet_band_layout(64, 64, 3);
  const LambdaSchedule s = LambdaSchedule::by_level(layout, 2.0);
  REQUIRE(s.lambda.size() == 10);
  CHECK(s.lambda[0] == 0.5);
  CHECK(s.lambda[3] == 1.0);
  CHECK(s.lambda[6] == 2.0);
  CHECK(s.lambda[9] == 2.0);
  // Nonincreasing from coarse to fine.
  for (std::size_t b = 0; b < 10; ++b) {
    for (std::size_t c = 0; c < 10; ++c) {
      if (layout.bands[b].level < layout.bands[c].level) CHECK(s.lambda[b] <= s.lambda[c]);
    }
  }
  CHECK_THROWS(LambdaSchedule::by_level(layout, -1.0));
  CHECK(LambdaSchedule::constant(3, 0.5).lambda == std::vector<double>{0.5, 0.5, 0.5});
}

TEST_CASE("estimate_all") {
  SUBCASE("single band reduces to estimate_band") {
    const auto beta = planted_band(256, 0.2, 2.0, 0.3, 3);
    BandLayout single;
    single.bands.push_back({"all", 1, false, {}});
    for (std::size_t k = 0; k < 256; ++k) single.bands[0].indices.push_back(k);
    const auto bands = estimate_bands(Coeffs(beta), single, 0.3, LambdaSchedule::constant(1, 0.0));
    const BandEstimate direct = estimate_band(beta, 0.3, 0.0);
    CHECK(bands[0].k_star == direct.k_star);
    CHECK(bands[0].sigma_hat == direct.sigma_hat);
    const ModelParams params = estimate_all(Coeffs(beta), single, 0.3, LambdaSchedule::constant(1, 0.0));
    CHECK(params.p(17) == direct.p_hat);
  }
  SUBCASE("inactive bands get floor values") {
    const BandLayout layout = wavelet_band_layout(16, 16, 1);
    const Coeffs zero(256);
    const auto bands = estimate_bands(zero, layout, 1.0, LambdaSchedule::constant(4, 1.0));
    for (const BandEstimate& b : bands) {
      CHECK_FALSE(b.active());
      CHECK(b.p_hat == kProbabilityFloor);
      CHECK(b.sigma_hat == kSigmaFloor);
    }
    CHECK_NOTHROW(to_model_params(bands, layout, 1.0));
  }
  SUBCASE("ten-band synthetic image recovery") {
    const Dictionary d = Dictionary::db5_2d(128, 128, 3);
    const BandLayout layout = d.band_layout();
    std::vector<double> p;
    std::vector<double> sx;
    for (std::size_t b = 0; b < 10; ++b) {
      p.push_back(0.05 * static_cast<double>(10 - b));
      sx.push_back(4.0 - 3.5 * static_cast<double>(b) / 9.0);
    }
    const ModelParams truth = ModelParams::from_bands(layout, p, sx, 0.05);
    const SupportMask s = sample_support(truth, 1);
    const Signal y = synthesize_observation(d, sample_coefficients(truth, s, 1), 0.05, 1);
    const auto est = estimate_bands(d.analyze(y), layout, 0.05, LambdaSchedule::constant(10, 0.0));
    for (std::size_t b = 0; b < 10; ++b) {
      if (layout.bands[b].size() < 1024) continue;
      CAPTURE(layout.bands[b].id);
      CHECK(std::abs(est[b].p_hat - p[b]) <= 0.05);
      CHECK(std::abs(est[b].sigma_hat / sx[b] - 1.0) <= 0.10);
      CHECK(est[b].band == layout.bands[b].id);
    }
  }
}
