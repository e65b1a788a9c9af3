#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bgshrink/dict.hpp"
#include "bgshrink/model.hpp"
#include "bgshrink/types.hpp"

namespace bgshrink {

// Band-wise maximum-likelihood estimation of (p_i, sigma_i) from transform
// coefficients with the noise level sigma known. For a trial cardinality k
// the likelihood is maximized in closed form by
//   p = k / n,  sigma_i^2 = E_k / k - sigma^2
// where E_k is the energy of the k largest |beta| in the band; k is then
// found by an exhaustive sweep over 0..n.

inline constexpr double kProbabilityFloor = 1e-6;
/// Relative floor for sigma_i: sigma_i >= kSigmaFloor * sigma.
inline constexpr double kSigmaFloor = 1e-6;

struct BandEstimate {
  std::string band;
  std::size_t n = 0;
  std::size_t k_star = 0;
  double p_hat = kProbabilityFloor;
  double sigma_hat = 0.0;
  double objective = 0.0;
  bool active() const { return k_star > 0; }
};

/// Per-band sparsity penalty lambda_i >= 0.
struct LambdaSchedule {
  std::vector<double> lambda;

  /// All bands share one value.
  static LambdaSchedule constant(std::size_t bands, double value);
  /// lambda0 * 2^-(L - level): lambda0 on the approximation and coarsest
  /// detail bands, halving with every finer level.
  static LambdaSchedule by_level(const BandLayout& layout, double lambda0);
};

/// f(k) with the closed-form p and sigma_i substituted, given the prefix
/// energy E_k (sum of the k largest beta^2). f(0) = 0.
double band_objective(std::size_t k, double top_energy, std::size_t n, double sigma, double lambda);
/// Same, reading E_k from beta^2 sorted in descending order.
double band_objective(std::size_t k, std::span<const double> sorted_beta_sq, double sigma,
                      double lambda);

/// Closed-form sigma_i for cardinality k, clamped to the floor.
double band_sigma_hat(std::size_t k, double top_energy, double sigma);

/// Exhaustive sweep k = 0..n; the first maximizer wins.
BandEstimate estimate_band(std::span<const double> beta_band, double sigma, double lambda);

/// Every band estimated independently. Inactive bands (k* = 0) get p at the
/// probability floor and sigma_i at the sigma floor.
std::vector<BandEstimate> estimate_bands(const Coeffs& beta, const BandLayout& layout, double sigma,
                                         const LambdaSchedule& schedule);

/// estimate_bands expanded to per-atom parameters.
ModelParams estimate_all(const Coeffs& beta, const BandLayout& layout, double sigma,
                         const LambdaSchedule& schedule);
ModelParams to_model_params(const std::vector<BandEstimate>& bands, const BandLayout& layout,
                            double sigma);

}  // namespace bgshrink
