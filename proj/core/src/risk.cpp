#include "bgshrink/risk.hpp"

#include <algorithm>
#include <cmath>
#include <execution>
#include <numeric>
#include <stdexcept>

#include "bgshrink/shrink.hpp"

namespace bgshrink {

namespace {

struct AtomRisk {
  double oracle;  // c^2 sigma^2 g
  double mmse;
  double map;
  double g;
};

AtomRisk atom_risk(const ShrinkageInputs& in, std::size_t k, bool in_map) {
  const double g = logistic(in.log_q[k]);
  const double b2 = in.beta[k] * in.beta[k];
  const double c4b2 = in.c2[k] * in.c2[k] * b2;
  const double oracle = in.c2[k] * in.sigma * in.sigma * g;
  // 1 - g evaluated from the log odds to keep precision when g -> 1.
  const double one_minus_g = logistic(-in.log_q[k]);
  AtomRisk r{};
  r.g = g;
  r.oracle = oracle;
  r.mmse = oracle + c4b2 * g * one_minus_g;
  r.map = oracle + c4b2 * (in_map ? one_minus_g : g);
  return r;
}

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

}  // namespace

std::vector<double> posterior_inclusion(const Coeffs& beta, const ModelParams& params) {
  const ShrinkageInputs in = ShrinkageInputs::make(beta, params);
  std::vector<double> g(in.size());
  std::transform(in.log_q.begin(), in.log_q.end(), g.begin(), logistic);
  return g;
}

double oracle_risk(const SupportMask& support, const ModelParams& params) {
  require_length(support.size(), params.size(), "oracle_risk");
  double s = 0.0;
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (support.contains(k)) s += params.c2(k);
  }
  return s * params.sigma() * params.sigma();
}

double expected_oracle_risk(const Coeffs& beta, const ModelParams& params) {
  const ShrinkageInputs in = ShrinkageInputs::make(beta, params);
  double s = 0.0;
  for (std::size_t k = 0; k < in.size(); ++k) s += atom_risk(in, k, false).oracle;
  return s;
}

double mmse_risk(const Coeffs& beta, const ModelParams& params) {
  const ShrinkageInputs in = ShrinkageInputs::make(beta, params);
  double s = 0.0;
  for (std::size_t k = 0; k < in.size(); ++k) s += atom_risk(in, k, false).mmse;
  return s;
}

double map_risk(const Coeffs& beta, const ModelParams& params, const SupportMask& map_support) {
  require_length(map_support.size(), params.size(), "map_risk");
  const ShrinkageInputs in = ShrinkageInputs::make(beta, params);
  double s = 0.0;
  for (std::size_t k = 0; k < in.size(); ++k) s += atom_risk(in, k, map_support.contains(k)).map;
  return s;
}

double expected_support_size(const Coeffs& beta, const ModelParams& params) {
  const std::vector<double> g = posterior_inclusion(beta, params);
  return std::accumulate(g.begin(), g.end(), 0.0);
}

double estimate_risk(const Coeffs& beta, const ModelParams& params, const Coeffs& estimate) {
  require_length(estimate.size(), params.size(), "estimate_risk");
  const ShrinkageInputs in = ShrinkageInputs::make(beta, params);
  const double var = params.sigma() * params.sigma();
  double s = 0.0;
  for (std::size_t k = 0; k < in.size(); ++k) {
    const double g = logistic(in.log_q[k]);
    const double on = estimate[k] - in.c2[k] * beta[k];
    s += g * (in.c2[k] * var + on * on) + logistic(-in.log_q[k]) * estimate[k] * estimate[k];
  }
  return s;
}

RiskReport risk_report(const Coeffs& beta, const ModelParams& params, const BandLayout* layout) {
  const ShrinkageInputs in = ShrinkageInputs::make(beta, params);
  std::vector<AtomRisk> atoms(in.size());
  for (std::size_t k = 0; k < in.size(); ++k) atoms[k] = atom_risk(in, k, in.log_q[k] > 0.0);

  RiskReport report;
  for (const AtomRisk& a : atoms) {
    report.mse_oracle += a.oracle;
    report.mse_mmse += a.mmse;
    report.mse_map += a.map;
    report.expected_support_size += a.g;
  }
  if (layout != nullptr) {
    layout->validate(in.size());
    for (const Band& band : layout->bands) {
      BandRisk br{band.id};
      for (std::size_t k : band.indices) {
        br.mse_oracle += atoms[k].oracle;
        br.mse_mmse += atoms[k].mmse;
        br.mse_map += atoms[k].map;
        br.expected_support_size += atoms[k].g;
      }
      report.per_band.push_back(std::move(br));
    }
  }
  return report;
}

MonteCarloRisk posterior_mc_risk(const Coeffs& beta, const ModelParams& params,
                                 const Coeffs& estimate, std::size_t samples, SeedKey key) {
  if (samples == 0) throw std::invalid_argument("posterior_mc_risk: samples must be >= 1");
  require_length(estimate.size(), params.size(), "posterior_mc_risk");
  const ShrinkageInputs in = ShrinkageInputs::make(beta, params);
  const std::size_t m = in.size();
  std::vector<double> g(m);
  std::vector<double> mean(m);
  std::vector<double> sd(m);
  for (std::size_t k = 0; k < m; ++k) {
    g[k] = logistic(in.log_q[k]);
    mean[k] = in.c2[k] * beta[k];
    sd[k] = std::sqrt(in.c2[k]) * params.sigma();
  }

  // Fixed-size blocks, each with its own stream; block sums are combined in
  // block order so the result does not depend on scheduling.
  constexpr std::size_t kBlock = 1024;
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::vector<Partial> partial(blocks);
  std::vector<std::size_t> ids(blocks);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  std::for_each(std::execution::par, ids.begin(), ids.end(), [&](std::size_t b) {
    Rng rng(SeedKey{key.seed, key.trial * 0x10000ULL + b}, Stream::posterior);
    const std::size_t begin = b * kBlock;
    const std::size_t end = std::min(samples, begin + kBlock);
    Partial p;
    for (std::size_t s = begin; s < end; ++s) {
      double err = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double x = rng.bernoulli(g[k]) ? mean[k] + sd[k] * rng.normal() : 0.0;
        const double d = estimate[k] - x;
        err += d * d;
      }
      p.sum += err;
      p.sum_sq += err * err;
    }
    partial[b] = p;
  });

  Partial total;
  for (const Partial& p : partial) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  const double n = static_cast<double>(samples);
  MonteCarloRisk out;
  out.samples = samples;
  out.mean = total.sum / n;
  if (samples > 1) {
    const double var = std::max(0.0, (total.sum_sq - n * out.mean * out.mean) / (n - 1.0));
    out.std_error = std::sqrt(var / n);
  }
  return out;
}

}  // namespace bgshrink
