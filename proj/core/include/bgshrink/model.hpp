#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bgshrink/dict.hpp"
#include "bgshrink/rng.hpp"
#include "bgshrink/types.hpp"

namespace bgshrink {

/// Bernoulli-Gaussian prior over m atoms plus white noise level.
///
/// Atom k joins the support with probability p_k in (0, 1); on the support
/// its coefficient is N(0, sigma_x_k^2). Observations add N(0, sigma^2) noise.
/// A shared sigma_x is the homoscedastic special case.
class ModelParams {
 public:
  /// Throws std::invalid_argument on any violated invariant.
  ModelParams(std::vector<double> p, std::vector<double> sigma_x, double sigma);

  static ModelParams homoscedastic(std::size_t m, double p, double sigma_x, double sigma);
  /// Expands per-band values to per-atom vectors.
  static ModelParams from_bands(const BandLayout& layout, std::span<const double> band_p,
                                std::span<const double> band_sigma_x, double sigma);

  std::size_t size() const { return p_.size(); }
  std::span<const double> p() const { return p_; }
  std::span<const double> sigma_x() const { return sigma_x_; }
  double p(std::size_t k) const { return p_[k]; }
  double sigma_x(std::size_t k) const { return sigma_x_[k]; }
  double sigma() const { return sigma_; }

  /// c_k^2 = sigma_x_k^2 / (sigma_x_k^2 + sigma^2).
  double c2(std::size_t k) const;
  /// ln G_k with G_k = sqrt(1 - c_k^2) p_k / (1 - p_k).
  double log_g_factor(std::size_t k) const;

 private:
  std::vector<double> p_;
  std::vector<double> sigma_x_;
  double sigma_;
};

SupportMask sample_support(const ModelParams& params, SeedKey key);

/// Zero off the support; N(0, sigma_x_k^2) on it.
Coeffs sample_coefficients(const ModelParams& params, const SupportMask& support, SeedKey key);

/// y = D x + v, v ~ N(0, sigma^2 I). sigma = 0 gives the clean synthesis.
Signal synthesize_observation(const Dictionary& dict, const Coeffs& x, double sigma, SeedKey key);

}  // namespace bgshrink
