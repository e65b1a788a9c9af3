#include "bgshrink/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "bgshrink/risk.hpp"

namespace bgshrink {

namespace {

void require_positive(double g_m, const char* what) {
  if (!(g_m > 0.0) || !std::isfinite(g_m)) {
    throw std::invalid_argument(std::string(what) + ": G_m must be positive and finite");
  }
}

}  // namespace

double g_factor(double p, double sigma_x, double sigma) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("g_factor: p must lie in (0, 1)");
  if (!(sigma_x > 0.0) || !(sigma > 0.0)) {
    throw std::invalid_argument("g_factor: standard deviations must be positive");
  }
  const double one_minus_c2 = sigma * sigma / (sigma_x * sigma_x + sigma * sigma);
  return std::sqrt(one_minus_c2) * p / (1.0 - p);
}

double min_g_factor(const ModelParams& params) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < params.size(); ++k) lo = std::min(lo, params.log_g_factor(k));
  return std::exp(lo);
}

double f_mmse(double s, double g_m) { return 2.0 * s / (1.0 + g_m * std::exp(s)); }

double f_map(double s, double g_m) {
  const double ge = g_m * std::exp(s);
  return ge <= 1.0 ? 2.0 * s : 2.0 * s / ge;
}

double mmse_switch_point() { return 0.25 * std::exp(-2.0); }
double map_switch_point() { return std::exp(-1.0); }

std::string_view to_string(BoundRegime r) {
  return r == BoundRegime::log_branch ? "log" : "exponential";
}

WorstRatio worst_ratio_mmse(double g_m) {
  require_positive(g_m, "worst_ratio_mmse");
  // f' = 0  <=>  h(s) = G e^s (s - 1) - 1 = 0; h is increasing on s > 1.
  auto h = [g_m](double s) { return g_m * std::exp(s) * (s - 1.0) - 1.0; };
  const double lo = 1.0;
  const double hi = std::max(2.0, std::log(1.0 / g_m) + 10.0);
  auto done = [](double a, double b) { return std::abs(b - a) <= 1e-12; };
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::bisect(h, lo, hi, done, max_iter);
  if (!done(a, b)) throw std::runtime_error("worst_ratio_mmse: bisection did not converge");
  WorstRatio out;
  out.s_star = 0.5 * (a + b);
  out.r_star = f_mmse(out.s_star, g_m);
  return out;
}

WorstRatio worst_ratio_map(double g_m) {
  require_positive(g_m, "worst_ratio_map");
  WorstRatio out;
  if (g_m < map_switch_point()) {
    out.s_star = std::log(1.0 / g_m);
    out.r_star = 2.0 * out.s_star;
  } else {
    out.s_star = 1.0;
    out.r_star = 2.0 / (g_m * std::numbers::e);
  }
  return out;
}

ExplicitBound explicit_bound_mmse(double g_m) {
  require_positive(g_m, "explicit_bound_mmse");
  if (g_m < mmse_switch_point()) {
    return {2.0 * std::log(1.0 / (4.0 * g_m)), BoundRegime::log_branch};
  }
  return {2.0 / (std::sqrt(g_m) * std::numbers::e), BoundRegime::exponential_branch};
}

ExplicitBound explicit_bound_map(double g_m) {
  require_positive(g_m, "explicit_bound_map");
  if (g_m < map_switch_point()) return {2.0 * std::log(1.0 / g_m), BoundRegime::log_branch};
  return {2.0 / (g_m * std::numbers::e), BoundRegime::exponential_branch};
}

BoundReport bound_report(Estimator estimator, double g_m) {
  BoundReport rep;
  rep.estimator = estimator;
  rep.g_m = g_m;
  WorstRatio w;
  ExplicitBound eb;
  switch (estimator) {
    case Estimator::mmse:
      w = worst_ratio_mmse(g_m);
      eb = explicit_bound_mmse(g_m);
      break;
    case Estimator::map:
      w = worst_ratio_map(g_m);
      eb = explicit_bound_map(g_m);
      break;
    case Estimator::oracle:
      throw std::invalid_argument("bound_report: the oracle has no excess-error bound");
  }
  rep.s_star = w.s_star;
  rep.r_star = w.r_star;
  rep.explicit_bound = eb.bound;
  rep.regime = eb.regime;
  rep.oracle_multiplier = 1.0 + eb.bound;
  return rep;
}

BoundReport bound_report(Estimator estimator, const ModelParams& params) {
  return bound_report(estimator, min_g_factor(params));
}

double risk_ratio(Estimator estimator, const Coeffs& beta, const ModelParams& params) {
  const ShrinkageInputs in = ShrinkageInputs::make(beta, params);
  const double var = params.sigma() * params.sigma();
  double mse1 = 0.0;
  double mse2 = 0.0;
  for (std::size_t k = 0; k < in.size(); ++k) {
    const double g = logistic(in.log_q[k]);
    const double one_minus_g = logistic(-in.log_q[k]);
    const double c4b2 = in.c2[k] * in.c2[k] * beta[k] * beta[k];
    mse1 += in.c2[k] * var * g;
    switch (estimator) {
      case Estimator::mmse: mse2 += c4b2 * g * one_minus_g; break;
      case Estimator::map: mse2 += c4b2 * (in.log_q[k] > 0.0 ? one_minus_g : g); break;
      case Estimator::oracle: throw std::invalid_argument("risk_ratio: needs map or mmse");
    }
  }
  return mse2 / mse1;
}

double worst_case_beta(double s_star, double c2, double sigma) {
  return sigma * std::sqrt(2.0 * s_star / c2);
}

}  // namespace bgshrink
