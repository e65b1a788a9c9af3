#include "bgshrink/shrink.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bgshrink {

std::string_view to_string(Estimator e) {
  switch (e) {
    case Estimator::oracle: return "oracle";
    case Estimator::map: return "map";
    case Estimator::mmse: return "mmse";
  }
  return "unknown";
}

Estimator parse_estimator(std::string_view name) {
  if (name == "oracle") return Estimator::oracle;
  if (name == "map") return Estimator::map;
  if (name == "mmse") return Estimator::mmse;
  throw std::invalid_argument("unknown estimator: " + std::string(name));
}

ShrinkageInputs ShrinkageInputs::make(const Coeffs& beta, const ModelParams& params) {
  if (beta.size() != params.size()) {
    throw std::invalid_argument("ShrinkageInputs: beta length does not match params");
  }
  ShrinkageInputs in;
  const std::size_t m = beta.size();
  in.beta = beta.view();
  in.sigma = params.sigma();
  in.c2.resize(m);
  in.log_g.resize(m);
  in.log_q.resize(m);
  const double inv_two_var = 1.0 / (2.0 * params.sigma() * params.sigma());
  for (std::size_t k = 0; k < m; ++k) {
    in.c2[k] = params.c2(k);
    in.log_g[k] = params.log_g_factor(k);
    in.log_q[k] = in.c2[k] * beta[k] * beta[k] * inv_two_var + in.log_g[k];
  }
  return in;
}

double logistic(double log_odds) {
  if (log_odds >= 0.0) return 1.0 / (1.0 + std::exp(-log_odds));
  const double e = std::exp(log_odds);
  return e / (1.0 + e);
}

Estimate oracle_estimate(const Coeffs& beta, const SupportMask& support, const ModelParams& params) {
  if (beta.size() != params.size() || support.size() != params.size()) {
    throw std::invalid_argument("oracle_estimate: length mismatch");
  }
  Estimate est{Coeffs(beta.size()), support};
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (support.contains(k)) est.xhat[k] = params.c2(k) * beta[k];
  }
  return est;
}

Estimate map_shrink(const Coeffs& beta, const ModelParams& params) {
  const ShrinkageInputs in = ShrinkageInputs::make(beta, params);
  Estimate est{Coeffs(beta.size()), SupportMask(beta.size())};
  for (std::size_t k = 0; k < in.size(); ++k) {
    // Strict inequality: a tie (q_k == 1) excludes the atom.
    if (in.log_q[k] > 0.0) {
      est.support->set(k, true);
      est.xhat[k] = in.c2[k] * beta[k];
    }
  }
  return est;
}

Estimate mmse_shrink(const Coeffs& beta, const ModelParams& params) {
  const ShrinkageInputs in = ShrinkageInputs::make(beta, params);
  Estimate est{Coeffs(beta.size()), std::nullopt};
  for (std::size_t k = 0; k < in.size(); ++k) {
    est.xhat[k] = logistic(in.log_q[k]) * in.c2[k] * beta[k];
  }
  return est;
}

namespace {

ModelParams single_atom(const AtomPrior& prior) {
  return ModelParams::homoscedastic(1, prior.p, prior.sigma_x, prior.sigma);
}

}  // namespace

double map_threshold(const AtomPrior& prior) {
  const ModelParams params = single_atom(prior);
  const double log_g = params.log_g_factor(0);
  if (log_g >= 0.0) return 0.0;
  return std::sqrt(2.0) * prior.sigma / std::sqrt(params.c2(0)) * std::sqrt(-log_g);
}

double psi_map(double beta, const AtomPrior& prior) {
  return map_shrink(Coeffs(std::vector<double>{beta}), single_atom(prior)).xhat[0];
}

double psi_mmse(double beta, const AtomPrior& prior) {
  return mmse_shrink(Coeffs(std::vector<double>{beta}), single_atom(prior)).xhat[0];
}

std::vector<CurvePoint> shrinkage_curve(Estimator estimator, const AtomPrior& prior,
                                        std::span<const double> grid) {
  const ModelParams params = single_atom(prior);
  const double c2 = params.c2(0);
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (double b : grid) {
    if (!std::isfinite(b)) throw std::invalid_argument("shrinkage_curve: non-finite grid point");
    double psi = 0.0;
    switch (estimator) {
      case Estimator::oracle: psi = c2 * b; break;
      case Estimator::map: psi = psi_map(b, prior); break;
      case Estimator::mmse: psi = psi_mmse(b, prior); break;
    }
    out.push_back({b, psi});
  }
  return out;
}

}  // namespace bgshrink
