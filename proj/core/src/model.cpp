#include "bgshrink/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bgshrink {

ModelParams::ModelParams(std::vector<double> p, std::vector<double> sigma_x, double sigma)
    : p_(std::move(p)), sigma_x_(std::move(sigma_x)), sigma_(sigma) {
  if (p_.size() != sigma_x_.size()) {
    throw std::invalid_argument("ModelParams: p and sigma_x differ in length");
  }
  if (p_.empty()) throw std::invalid_argument("ModelParams: no atoms");
  for (std::size_t k = 0; k < p_.size(); ++k) {
    if (!(p_[k] > 0.0 && p_[k] < 1.0)) {
      throw std::invalid_argument("ModelParams: p[" + std::to_string(k) +
                                  "] must lie strictly inside (0, 1)");
    }
    if (!(sigma_x_[k] > 0.0) || !std::isfinite(sigma_x_[k])) {
      throw std::invalid_argument("ModelParams: sigma_x[" + std::to_string(k) +
                                  "] must be positive");
    }
  }
  if (!(sigma_ > 0.0) || !std::isfinite(sigma_)) {
    throw std::invalid_argument("ModelParams: sigma must be positive");
  }
}

ModelParams ModelParams::homoscedastic(std::size_t m, double p, double sigma_x, double sigma) {
  return ModelParams(std::vector<double>(m, p), std::vector<double>(m, sigma_x), sigma);
}

ModelParams ModelParams::from_bands(const BandLayout& layout, std::span<const double> band_p,
                                    std::span<const double> band_sigma_x, double sigma) {
  if (band_p.size() != layout.band_count() || band_sigma_x.size() != layout.band_count()) {
    throw std::invalid_argument("ModelParams::from_bands: one value per band required");
  }
  const std::size_t m = layout.total();
  layout.validate(m);
  std::vector<double> p(m);
  std::vector<double> sx(m);
  for (std::size_t b = 0; b < layout.band_count(); ++b) {
    for (std::size_t k : layout.bands[b].indices) {
      p[k] = band_p[b];
      sx[k] = band_sigma_x[b];
    }
  }
  return ModelParams(std::move(p), std::move(sx), sigma);
}

double ModelParams::c2(std::size_t k) const {
  const double vx = sigma_x_[k] * sigma_x_[k];
  return vx / (vx + sigma_ * sigma_);
}

double ModelParams::log_g_factor(std::size_t k) const {
  const double vx = sigma_x_[k] * sigma_x_[k];
  const double vn = sigma_ * sigma_;
  // 1 - c^2 = sigma^2 / (sigma_x^2 + sigma^2), evaluated without cancellation.
  return 0.5 * std::log(vn / (vx + vn)) + std::log(p_[k]) - std::log1p(-p_[k]);
}

SupportMask sample_support(const ModelParams& params, SeedKey key) {
  Rng rng(key, Stream::support);
  SupportMask s(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) s.set(k, rng.bernoulli(params.p(k)));
  return s;
}

Coeffs sample_coefficients(const ModelParams& params, const SupportMask& support, SeedKey key) {
  if (support.size() != params.size()) {
    throw std::invalid_argument("sample_coefficients: support length does not match params");
  }
  Rng rng(key, Stream::coefficients);
  Coeffs x(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (support.contains(k)) x[k] = rng.normal(params.sigma_x(k));
  }
  return x;
}

Signal synthesize_observation(const Dictionary& dict, const Coeffs& x, double sigma, SeedKey key) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("synthesize_observation: sigma must be >= 0");
  Signal y = dict.synthesize(x);
  if (sigma > 0.0) {
    Rng rng(key, Stream::noise);
    for (double& v : y.values) v += rng.normal(sigma);
  }
  return y;
}

}  // namespace bgshrink
