#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bgshrink/model.hpp"
#include "bgshrink/types.hpp"

namespace bgshrink {

enum class Estimator { oracle, map, mmse };

std::string_view to_string(Estimator e);
Estimator parse_estimator(std::string_view name);

/// Per-atom quantities shared by the shrinkage rules and risk formulas.
///
/// log_q[k] = c2[k] beta_k^2 / (2 sigma^2) + log_g[k] is the log posterior
/// odds of atom k being on the support; g = 1 / (1 + exp(-log_q)).
struct ShrinkageInputs {
  std::span<const double> beta;
  double sigma = 0.0;
  std::vector<double> c2;
  std::vector<double> log_g;
  std::vector<double> log_q;

  static ShrinkageInputs make(const Coeffs& beta, const ModelParams& params);
  std::size_t size() const { return c2.size(); }
};

/// Logistic function evaluated without overflow for any argument.
double logistic(double log_odds);

struct Estimate {
  Coeffs xhat;
  std::optional<SupportMask> support;  // absent for MMSE
};

/// xhat_k = c_k^2 beta_k on the given support, 0 elsewhere.
Estimate oracle_estimate(const Coeffs& beta, const SupportMask& support, const ModelParams& params);

/// Hard shrinkage: keep atom k (scaled by c_k^2) iff log_q_k > 0.
Estimate map_shrink(const Coeffs& beta, const ModelParams& params);

/// Soft shrinkage: xhat_k = g_k c_k^2 beta_k.
Estimate mmse_shrink(const Coeffs& beta, const ModelParams& params);

/// Scalar prior of a single atom.
struct AtomPrior {
  double p = 0.1;
  double sigma_x = 1.0;
  double sigma = 1.0;
};

/// |beta| above which the MAP rule keeps the atom; 0 when G >= 1.
double map_threshold(const AtomPrior& prior);
double psi_map(double beta, const AtomPrior& prior);
double psi_mmse(double beta, const AtomPrior& prior);

struct CurvePoint {
  double beta;
  double psi;
};

/// Tabulates psi_MAP or psi_MMSE (oracle: c^2 beta) over a grid.
std::vector<CurvePoint> shrinkage_curve(Estimator estimator, const AtomPrior& prior,
                                        std::span<const double> grid);

}  // namespace bgshrink
