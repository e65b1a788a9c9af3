#include "bgshrink/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <execution>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bgshrink::exact {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Supports are processed in fixed blocks; per-block partial results are
// combined in block order, so reductions are deterministic.
constexpr std::uint64_t kBlock = 1024;

void check_inputs(std::span<const double> y, const DenseDictionary& dict,
                  const ModelParams& params) {
  if (y.size() != dict.rows()) throw std::invalid_argument("exact: y length does not match D");
  if (params.size() != dict.atoms()) {
    throw std::invalid_argument("exact: params length does not match the atom count");
  }
  if (dict.atoms() > kMaxAtoms) {
    throw std::length_error("exact: enumeration budget exceeded (" + std::to_string(dict.atoms()) +
                            " atoms > " + std::to_string(kMaxAtoms) + ")");
  }
}

// Everything the per-support formulas need, from one Cholesky factorization of Q_S.
struct Factored {
  std::vector<Index> idx;
  VectorXd qinv_b;  // Q_S^{-1} D_S^T y
  double quad = 0.0;        // (D_S^T y)^T Q_S^{-1} (D_S^T y)
  double log_det_q = 0.0;
  double log_det_v = 0.0;
  double trace_inv_q = 0.0;
  double log_prior = 0.0;
};

Factored factor(std::span<const double> y, const DenseDictionary& dict, const ModelParams& params,
                std::uint64_t bits, bool want_trace) {
  const MatrixXd& d = dict.matrix();
  const std::size_t m = dict.atoms();
  const double var = params.sigma() * params.sigma();
  Factored f;
  for (std::size_t k = 0; k < m; ++k) {
    if ((bits >> k) & 1U) {
      f.idx.push_back(static_cast<Index>(k));
      f.log_prior += std::log(params.p(k));
    } else {
      f.log_prior += std::log1p(-params.p(k));
    }
  }
  const auto s = static_cast<Index>(f.idx.size());
  if (s == 0) return f;

  Eigen::Map<const VectorXd> yv(y.data(), static_cast<Index>(y.size()));
  MatrixXd ds(d.rows(), s);
  for (Index j = 0; j < s; ++j) ds.col(j) = d.col(f.idx[static_cast<std::size_t>(j)]);
  const VectorXd b = ds.transpose() * yv;
  MatrixXd q = ds.transpose() * ds / var;
  for (Index j = 0; j < s; ++j) {
    const double vx = params.sigma_x(static_cast<std::size_t>(f.idx[static_cast<std::size_t>(j)]));
    q(j, j) += 1.0 / (vx * vx);
    f.log_det_v += 2.0 * std::log(vx);
  }
  const Eigen::LLT<MatrixXd> llt(q);
  if (llt.info() != Eigen::Success) throw std::runtime_error("exact: Q_S is not positive definite");
  f.qinv_b = llt.solve(b);
  f.quad = b.dot(f.qinv_b);
  const MatrixXd& l = llt.matrixLLT();
  for (Index j = 0; j < s; ++j) f.log_det_q += 2.0 * std::log(l(j, j));
  if (want_trace) f.trace_inv_q = llt.solve(MatrixXd::Identity(s, s)).trace();
  return f;
}

// log det C_S = 2 n log sigma + log det V_S + log det Q_S.
double log_det_c(const Factored& f, std::size_t n, double sigma) {
  return 2.0 * static_cast<double>(n) * std::log(sigma) + f.log_det_v + f.log_det_q;
}

double log_weight_of(const Factored& f, std::span<const double> y, std::size_t n, double sigma) {
  const double var = sigma * sigma;
  double yy = 0.0;
  for (double v : y) yy += v * v;
  // y^T C_S^{-1} y = ||y||^2 / sigma^2 - b^T Q_S^{-1} b / sigma^4.
  const double quad_c = yy / var - f.quad / (var * var);
  return -0.5 * log_det_c(f, n, sigma) - 0.5 * quad_c + f.log_prior;
}

template <typename PerBlock>
void for_each_block(std::size_t m, PerBlock&& body) {
  const std::uint64_t count = std::uint64_t{1} << m;
  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<std::uint64_t> ids(blocks);
  std::iota(ids.begin(), ids.end(), std::uint64_t{0});
  std::for_each(std::execution::par, ids.begin(), ids.end(), [&](std::uint64_t b) {
    body(b, b * kBlock, std::min(count, (b + 1) * kBlock));
  });
}

std::uint64_t block_count(std::size_t m) {
  return ((std::uint64_t{1} << m) + kBlock - 1) / kBlock;
}

}  // namespace

DenseDictionary::DenseDictionary(Eigen::MatrixXd d) : d_(std::move(d)) {
  if (d_.rows() == 0 || d_.cols() == 0) throw std::invalid_argument("DenseDictionary: empty matrix");
  for (Index j = 0; j < d_.cols(); ++j) {
    if (std::abs(d_.col(j).norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("DenseDictionary: column " + std::to_string(j) +
                                  " is not unit norm");
    }
  }
}

DenseDictionary DenseDictionary::from(const Dictionary& dict) { return DenseDictionary(dict.matrix()); }

SupportTerms support_terms(std::span<const double> y, const DenseDictionary& dict,
                           const ModelParams& params, const SupportMask& support) {
  check_inputs(y, dict, params);
  if (support.size() != dict.atoms()) throw std::invalid_argument("support_terms: mask length");
  const Factored f = factor(y, dict, params, support.to_bits(), true);
  SupportTerms t;
  t.xhat.assign(dict.atoms(), 0.0);
  const double var = params.sigma() * params.sigma();
  for (std::size_t j = 0; j < f.idx.size(); ++j) {
    t.xhat[static_cast<std::size_t>(f.idx[j])] = f.qinv_b(static_cast<Index>(j)) / var;
  }
  t.trace_inv_q = f.trace_inv_q;
  t.log_weight = log_weight_of(f, y, dict.rows(), params.sigma());
  return t;
}

double log_support_weight(std::span<const double> y, const DenseDictionary& dict,
                          const ModelParams& params, const SupportMask& support) {
  check_inputs(y, dict, params);
  const Factored f = factor(y, dict, params, support.to_bits(), false);
  return log_weight_of(f, y, dict.rows(), params.sigma());
}

double map_objective(std::span<const double> y, const DenseDictionary& dict,
                     const ModelParams& params, const SupportMask& support) {
  check_inputs(y, dict, params);
  const Factored f = factor(y, dict, params, support.to_bits(), false);
  const double var = params.sigma() * params.sigma();
  return 0.5 * f.quad / (var * var) - 0.5 * log_det_c(f, dict.rows(), params.sigma()) + f.log_prior;
}

SupportPosterior support_posterior(std::span<const double> y, const DenseDictionary& dict,
                                   const ModelParams& params) {
  check_inputs(y, dict, params);
  const std::size_t m = dict.atoms();
  SupportPosterior post;
  post.atoms = m;
  post.log_weight.resize(std::size_t{1} << m);
  for_each_block(m, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t bits = begin; bits < end; ++bits) {
      post.log_weight[bits] =
          log_weight_of(factor(y, dict, params, bits, false), y, dict.rows(), params.sigma());
    }
  });
  const double top = *std::max_element(post.log_weight.begin(), post.log_weight.end());
  double sum = 0.0;
  for (double lw : post.log_weight) sum += std::exp(lw - top);
  post.log_normalizer = top + std::log(sum);
  post.probability.resize(post.log_weight.size());
  for (std::size_t i = 0; i < post.log_weight.size(); ++i) {
    post.probability[i] = std::exp(post.log_weight[i] - post.log_normalizer);
  }
  return post;
}

namespace {

// Weighted sums over all supports of the oracle estimate and of the
// per-support risk against a fixed estimate (if given).
struct Accumulated {
  std::vector<double> mean;  // sum_S P(S|y) xhat_S
  double risk = 0.0;         // sum_S P(S|y) [tr Q^{-1} + ||est - xhat_S||^2]
  double support_size = 0.0;
};

Accumulated accumulate(std::span<const double> y, const DenseDictionary& dict,
                       const ModelParams& params, const Coeffs* estimate) {
  const SupportPosterior post = support_posterior(y, dict, params);
  const std::size_t m = dict.atoms();
  const double var = params.sigma() * params.sigma();
  std::vector<Accumulated> partial(block_count(m));
  for_each_block(m, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
    Accumulated acc;
    acc.mean.assign(m, 0.0);
    std::vector<double> xs(m);
    for (std::uint64_t bits = begin; bits < end; ++bits) {
      const double w = post.probability[bits];
      const Factored f = factor(y, dict, params, bits, estimate != nullptr);
      std::fill(xs.begin(), xs.end(), 0.0);
      for (std::size_t j = 0; j < f.idx.size(); ++j) {
        xs[static_cast<std::size_t>(f.idx[j])] = f.qinv_b(static_cast<Index>(j)) / var;
      }
      for (std::size_t k = 0; k < m; ++k) acc.mean[k] += w * xs[k];
      acc.support_size += w * static_cast<double>(f.idx.size());
      if (estimate != nullptr) {
        double dist = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const double d = (*estimate)[k] - xs[k];
          dist += d * d;
        }
        acc.risk += w * (f.trace_inv_q + dist);
      }
    }
    partial[b] = std::move(acc);
  });
  Accumulated total;
  total.mean.assign(m, 0.0);
  for (const Accumulated& p : partial) {
    for (std::size_t k = 0; k < m; ++k) total.mean[k] += p.mean[k];
    total.risk += p.risk;
    total.support_size += p.support_size;
  }
  return total;
}

}  // namespace

Coeffs exact_mmse(std::span<const double> y, const DenseDictionary& dict, const ModelParams& params) {
  return Coeffs(accumulate(y, dict, params, nullptr).mean);
}

MapResult exact_map(std::span<const double> y, const DenseDictionary& dict,
                    const ModelParams& params) {
  check_inputs(y, dict, params);
  const std::size_t m = dict.atoms();
  const std::uint64_t count = std::uint64_t{1} << m;
  std::vector<double> val(count);
  for_each_block(m, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t bits = begin; bits < end; ++bits) {
      val[bits] = map_objective(y, dict, params, SupportMask::from_bits(bits, m));
    }
  });
  std::uint64_t best = 0;
  for (std::uint64_t bits = 1; bits < count; ++bits) {
    if (val[bits] > val[best]) {
      best = bits;
    } else if (val[bits] == val[best]) {
      const int pc_new = std::popcount(bits);
      const int pc_old = std::popcount(best);
      if (pc_new < pc_old) best = bits;  // bits > best, so equal popcount keeps best
    }
  }
  MapResult out;
  out.support = SupportMask::from_bits(best, m);
  out.objective = val[best];
  out.xhat = Coeffs(support_terms(y, dict, params, out.support).xhat);
  return out;
}

double exact_risk(std::span<const double> y, const DenseDictionary& dict, const ModelParams& params,
                  const Coeffs& estimate) {
  if (estimate.size() != dict.atoms()) throw std::invalid_argument("exact_risk: estimate length");
  return accumulate(y, dict, params, &estimate).risk;
}

double exact_expected_support_size(std::span<const double> y, const DenseDictionary& dict,
                                   const ModelParams& params) {
  return accumulate(y, dict, params, nullptr).support_size;
}

WeightSums support_weight_sums(std::span<const double> g) {
  const std::size_t m = g.size();
  if (m > kMaxAtoms) throw std::length_error("support_weight_sums: enumeration budget exceeded");
  for (double v : g) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("support_weight_sums: g outside [0, 1]");
  }
  WeightSums out;
  out.marginal.assign(m, 0.0);
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    double w = 1.0;
    for (std::size_t k = 0; k < m; ++k) w *= ((bits >> k) & 1U) ? g[k] : 1.0 - g[k];
    out.total += w;
    for (std::size_t k = 0; k < m; ++k) {
      if ((bits >> k) & 1U) out.marginal[k] += w;
    }
  }
  return out;
}

}  // namespace bgshrink::exact
