#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bgshrink/bgshrink.hpp"
#include "bgshrink_app/io.hpp"

namespace bgshrink::app {

/// "lo:hi:steps" (inclusive, linear or log-spaced) or a comma-separated list.
std::vector<double> parse_grid(std::string_view text, bool log_spaced = false);

// ---- synth -----------------------------------------------------------------

struct SyntheticConfig {
  Shape size{64, 64};
  int levels = 3;
  double p = 0.1;
  double sigma_x = 1.0;
  std::vector<double> sigmas{0.1, 0.25, 0.5, 0.75, 1.0};
  std::size_t trials = 200;
  std::uint64_t seed = 1;

  /// 128 x 128, 1000 trials.
  static SyntheticConfig paper_scale();
  void validate() const;
};

/// Averages over trials, each divided by the noise energy n sigma^2.
struct SyntheticRow {
  double sigma = 0.0;
  double empirical_oracle = 0.0;
  double empirical_map = 0.0;
  double empirical_mmse = 0.0;
  double theoretical_oracle = 0.0;  // |S| c^2 sigma^2 on the true support
  double theoretical_map = 0.0;
  double theoretical_mmse = 0.0;
  double expected_oracle = 0.0;     // sigma^2 sum c^2 g_k
};

std::vector<SyntheticRow> run_synthetic(const SyntheticConfig& config);
CsvTable synthetic_table(const SyntheticConfig& config, const std::vector<SyntheticRow>& rows);
std::string synthetic_svg(const std::vector<SyntheticRow>& rows);

// ---- denoise / estimate-params ----------------------------------------------

struct DenoiseConfig {
  double sigma = 10.0;
  int levels = 3;
  double lambda0 = 2.0;
  Estimator method = Estimator::mmse;
  std::uint64_t seed = 1;
  /// When false the input is taken to be the noisy observation already.
  bool add_noise = true;
};

struct BandError {
  std::string band;
  std::size_t n = 0;
  double noisy = 0.0;  // mean squared coefficient error per band
  double map = 0.0;
  double mmse = 0.0;
};

struct DenoiseResult {
  ImageBuffer noisy;
  ImageBuffer map_image;
  ImageBuffer mmse_image;
  bool has_reference = false;
  double psnr_noisy = 0.0;
  double psnr_map = 0.0;
  double psnr_mmse = 0.0;
  std::vector<BandEstimate> bands;
  std::vector<BandError> band_errors;  // empty without a reference

  const ImageBuffer& output(Estimator method) const;
};

/// Noisy observation of `clean` with N(0, sigma^2) per pixel (unquantized).
ImageBuffer add_noise(const ImageBuffer& clean, double sigma, std::uint64_t seed);

/// Band-wise estimates for an observed (noisy) image.
std::vector<BandEstimate> estimate_image_params(const ImageBuffer& noisy, double sigma, int levels,
                                                double lambda0);

DenoiseResult denoise_image(const ImageBuffer& input, const DenoiseConfig& config);
CsvTable denoise_table(const DenoiseConfig& config, const DenoiseResult& result);
CsvTable estimate_table(const DenoiseConfig& config, const std::vector<BandEstimate>& bands);

// ---- bounds / curve ----------------------------------------------------------

/// g_grid plus both switch points, sorted.
CsvTable bounds_table(std::vector<double> g_grid);
std::string bounds_svg(std::vector<double> g_grid);

CsvTable curve_table(double p, double sigma_x, const std::vector<double>& sigmas,
                     const std::vector<double>& beta_grid);
std::string curve_svg(double p, double sigma_x, const std::vector<double>& sigmas,
                      const std::vector<double>& beta_grid);

// ---- validate -------------------------------------------------------------

/// Largest relative deviations |a - b| / max(1, |b|) between closed forms and
/// full enumeration for one instance.
struct Certification {
  double posterior = 0.0;     // product form vs enumerated P(S|y), max over S
  double mmse = 0.0;
  double mmse_risk = 0.0;
  double map_risk = 0.0;
  double map_estimate = 0.0;
  double oracle_term = 0.0;   // sigma^2 sum c^2 g vs E[tr Q_S^-1]
  double oracle_risk = 0.0;   // |S| c^2 sigma^2 vs tr Q_S^-1 on a fixed support
  double support_size = 0.0;
  bool map_checked = false;   // false when an atom sits within 1e-8 of the MAP tie
  bool map_support_match = true;

  double worst() const;
};

Certification certify(const Dictionary& dict, const ModelParams& params, const Signal& y,
                      const SupportMask& probe_support);

struct ValidateConfig {
  std::uint64_t seed = 1;
  std::size_t m = 8;
  std::size_t trials = 100;
  double tolerance = 1e-9;
};

struct ValidateReport {
  std::size_t trials = 0;
  std::size_t map_skipped = 0;
  std::size_t failures = 0;
  Certification worst;
  std::vector<std::string> messages;
  bool passed() const { return failures == 0; }
};

/// Random heteroscedastic prior for certification: p in (0.02, 0.98),
/// sigma_x and sigma log-uniform; homoscedastic when `homo` is set.
ModelParams random_params(std::size_t m, std::uint64_t seed, std::uint64_t trial, bool homo);

ValidateReport validate(const ValidateConfig& config);
CsvTable validate_table(const ValidateConfig& config, const ValidateReport& report);

}  // namespace bgshrink::app
