#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bgshrink/dict.hpp"
#include "bgshrink/model.hpp"
#include "bgshrink/rng.hpp"
#include "bgshrink/types.hpp"

namespace bgshrink {

// Conditional mean-squared errors E[||xhat - x||^2 | y] for a unitary
// dictionary. Everything is separable across atoms, so the heteroscedastic
// case only subscripts c^2. Risks live in the coefficient domain, which equals
// the signal domain error under an orthogonal D.

/// g_k = P(k in S | y), computed from the log odds.
std::vector<double> posterior_inclusion(const Coeffs& beta, const ModelParams& params);

/// Oracle error for a known support: sum_{k in S} c_k^2 sigma^2.
double oracle_risk(const SupportMask& support, const ModelParams& params);

/// Posterior-expected oracle error sigma^2 sum_k c_k^2 g_k (MSE_1).
double expected_oracle_risk(const Coeffs& beta, const ModelParams& params);

/// sum_k c_k^2 sigma^2 g_k + c_k^4 beta_k^2 g_k (1 - g_k).
double mmse_risk(const Coeffs& beta, const ModelParams& params);

/// sum_k c_k^2 sigma^2 g_k + c_k^4 beta_k^2 (g_k + I_MAP(k) (1 - 2 g_k)).
double map_risk(const Coeffs& beta, const ModelParams& params, const SupportMask& map_support);

/// E[|S| | y] = sum_k g_k.
double expected_support_size(const Coeffs& beta, const ModelParams& params);

/// Conditional risk of an arbitrary estimate:
/// sum_k g_k (c_k^2 sigma^2 + (xhat_k - c_k^2 beta_k)^2) + (1 - g_k) xhat_k^2.
double estimate_risk(const Coeffs& beta, const ModelParams& params, const Coeffs& estimate);

struct BandRisk {
  std::string band;
  double mse_oracle = 0.0;
  double mse_mmse = 0.0;
  double mse_map = 0.0;
  double expected_support_size = 0.0;
};

struct RiskReport {
  double mse_oracle = 0.0;  // sigma^2 sum c_k^2 g_k
  double mse_mmse = 0.0;
  double mse_map = 0.0;
  double expected_support_size = 0.0;
  std::vector<BandRisk> per_band;  // empty unless a layout was given
};

RiskReport risk_report(const Coeffs& beta, const ModelParams& params,
                       const BandLayout* layout = nullptr);

struct MonteCarloRisk {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte-Carlo estimate of E[||estimate - x||^2 | y] drawing S_k ~ Bernoulli(g_k)
/// and x_k | S ~ N(c_k^2 beta_k, c_k^2 sigma^2) on the support.
MonteCarloRisk posterior_mc_risk(const Coeffs& beta, const ModelParams& params,
                                 const Coeffs& estimate, std::size_t samples, SeedKey key);

}  // namespace bgshrink
