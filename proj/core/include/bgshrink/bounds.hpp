#pragma once

#include <string_view>

#include "bgshrink/model.hpp"
#include "bgshrink/shrink.hpp"
#include "bgshrink/types.hpp"

namespace bgshrink {

// Worst-case ratio r = MSE_2 / MSE_1 of the excess (unknown-support) error to
// the posterior-expected oracle error, as a function of the smallest prior
// factor G_m = min_k sqrt(1 - c_k^2) p_k / (1 - p_k). With s = c^2 beta^2 /
// (2 sigma^2) the per-atom ratio is
//   MMSE: f(s) = 2 s / (1 + G e^s)
//   MAP:  f(s) = 2 s            if G e^s <= 1 (atom dropped)
//               2 s / (G e^s)   otherwise      (atom kept)

/// G = sqrt(1 - c^2) p / (1 - p). Throws unless 0 < p < 1 and sigmas > 0.
double g_factor(double p, double sigma_x, double sigma);

/// min_k G_k over all atoms.
double min_g_factor(const ModelParams& params);

double f_mmse(double s, double g_m);
double f_map(double s, double g_m);

/// 1 / (4 e^2): MMSE bound switches from the log to the exponential branch.
double mmse_switch_point();
/// 1 / e: MAP bound switches from the log to the exponential branch.
double map_switch_point();

enum class BoundRegime { log_branch, exponential_branch };
std::string_view to_string(BoundRegime r);

struct WorstRatio {
  double s_star = 0.0;
  double r_star = 0.0;
};

/// Maximizer of f_mmse: root of G e^s (s - 1) = 1 on [1, max(2, ln(1/G) + 10)].
WorstRatio worst_ratio_mmse(double g_m);
/// s* = ln(1/G), r* = 2 ln(1/G) when G < 1/e; s* = 1, r* = 2 / (G e) otherwise.
WorstRatio worst_ratio_map(double g_m);

struct ExplicitBound {
  double bound = 0.0;
  BoundRegime regime = BoundRegime::log_branch;
};

/// 2 ln(1 / (4 G)) for G < 1/(4 e^2), else 2 / (sqrt(G) e).
ExplicitBound explicit_bound_mmse(double g_m);
/// 2 ln(1 / G) for G < 1/e, else 2 / (G e). Equal to the MAP worst ratio.
ExplicitBound explicit_bound_map(double g_m);

struct BoundReport {
  Estimator estimator = Estimator::mmse;
  double g_m = 0.0;
  double s_star = 0.0;
  double r_star = 0.0;
  double explicit_bound = 0.0;
  BoundRegime regime = BoundRegime::log_branch;
  /// 1 + explicit_bound: multiplies the expected oracle error.
  double oracle_multiplier = 0.0;
};

BoundReport bound_report(Estimator estimator, double g_m);
BoundReport bound_report(Estimator estimator, const ModelParams& params);

/// MSE_2 / MSE_1 of the MMSE or MAP estimator at this observation.
double risk_ratio(Estimator estimator, const Coeffs& beta, const ModelParams& params);

/// |beta| at which a single atom with this c^2 attains s*, i.e.
/// sigma sqrt(2 s*) / c.
double worst_case_beta(double s_star, double c2, double sigma);

}  // namespace bgshrink
