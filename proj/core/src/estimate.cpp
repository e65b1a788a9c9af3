#include "bgshrink/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <execution>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace bgshrink {

namespace {

// x log x with 0 log 0 = 0.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

LambdaSchedule LambdaSchedule::constant(std::size_t bands, double value) {
  if (!(value >= 0.0)) throw std::invalid_argument("LambdaSchedule: lambda must be >= 0");
  return LambdaSchedule{std::vector<double>(bands, value)};
}

LambdaSchedule LambdaSchedule::by_level(const BandLayout& layout, double lambda0) {
  if (!(lambda0 >= 0.0)) throw std::invalid_argument("LambdaSchedule: lambda0 must be >= 0");
  int deepest = 0;
  for (const Band& b : layout.bands) deepest = std::max(deepest, b.level);
  LambdaSchedule s;
  for (const Band& b : layout.bands) {
    s.lambda.push_back(lambda0 * std::ldexp(1.0, -(deepest - b.level)));
  }
  return s;
}

double band_sigma_hat(std::size_t k, double top_energy, double sigma) {
  const double floor = kSigmaFloor * sigma;
  if (k == 0) return floor;
  const double var = top_energy / static_cast<double>(k) - sigma * sigma;
  return std::sqrt(std::max(var, floor * floor));
}

double band_objective(std::size_t k, double top_energy, std::size_t n, double sigma,
                      double lambda) {
  if (k > n) throw std::invalid_argument("band_objective: k exceeds the band size");
  if (k == 0) return 0.0;
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  const double var = sigma * sigma;
  const double sx = band_sigma_hat(k, top_energy, sigma);
  const double sx2 = sx * sx;
  // k log p + (n - k) log(1 - p) at p = k / n.
  const double prior = xlogx(kd) + xlogx(nd - kd) - xlogx(nd);
  return -0.5 * kd * std::log1p(sx2 / var) + prior +
         (sx2 / (var + sx2)) * top_energy / (2.0 * var) - lambda * kd;
}

double band_objective(std::size_t k, std::span<const double> sorted_beta_sq, double sigma,
                      double lambda) {
  if (k > sorted_beta_sq.size()) throw std::invalid_argument("band_objective: k exceeds the band size");
  const double energy = std::accumulate(sorted_beta_sq.begin(),
                                        sorted_beta_sq.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
  return band_objective(k, energy, sorted_beta_sq.size(), sigma, lambda);
}

BandEstimate estimate_band(std::span<const double> beta_band, double sigma, double lambda) {
  if (beta_band.empty()) throw std::invalid_argument("estimate_band: empty band");
  if (!(sigma > 0.0)) throw std::invalid_argument("estimate_band: sigma must be > 0");
  if (!(lambda >= 0.0)) throw std::invalid_argument("estimate_band: lambda must be >= 0");
  const std::size_t n = beta_band.size();
  std::vector<double> sq(n);
  std::transform(beta_band.begin(), beta_band.end(), sq.begin(), [](double b) { return b * b; });
  std::sort(sq.begin(), sq.end(), std::greater<>());

  BandEstimate best;
  best.n = n;
  best.objective = 0.0;
  double energy = 0.0;
  double best_energy = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    energy += sq[k - 1];
    const double f = band_objective(k, energy, n, sigma, lambda);
    if (f > best.objective) {
      best.objective = f;
      best.k_star = k;
      best_energy = energy;
    }
  }
  const double p = static_cast<double>(best.k_star) / static_cast<double>(n);
  best.p_hat = std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor);
  best.sigma_hat = band_sigma_hat(best.k_star, best_energy, sigma);
  return best;
}

std::vector<BandEstimate> estimate_bands(const Coeffs& beta, const BandLayout& layout, double sigma,
                                         const LambdaSchedule& schedule) {
  layout.validate(beta.size());
  if (schedule.lambda.size() != layout.band_count()) {
    throw std::invalid_argument("estimate_bands: one lambda per band required");
  }
  std::vector<BandEstimate> out(layout.band_count());
  std::vector<std::size_t> ids(layout.band_count());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  std::for_each(std::execution::par, ids.begin(), ids.end(), [&](std::size_t b) {
    const std::vector<double> band = layout.gather(beta.view(), b);
    BandEstimate e = estimate_band(band, sigma, schedule.lambda[b]);
    e.band = layout.bands[b].id;
    if (!e.active()) {
      e.p_hat = kProbabilityFloor;
      e.sigma_hat = kSigmaFloor * sigma;
    }
    out[b] = std::move(e);
  });
  return out;
}

ModelParams to_model_params(const std::vector<BandEstimate>& bands, const BandLayout& layout,
                            double sigma) {
  if (bands.size() != layout.band_count()) {
    throw std::invalid_argument("to_model_params: one estimate per band required");
  }
  std::vector<double> p;
  std::vector<double> sx;
  for (const BandEstimate& e : bands) {
    p.push_back(e.p_hat);
    sx.push_back(e.sigma_hat);
  }
  return ModelParams::from_bands(layout, p, sx, sigma);
}

ModelParams estimate_all(const Coeffs& beta, const BandLayout& layout, double sigma,
                         const LambdaSchedule& schedule) {
  return to_model_params(estimate_bands(beta, layout, sigma, schedule), layout, sigma);
}

}  // namespace bgshrink
