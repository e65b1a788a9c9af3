#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bgshrink/dict.hpp"
#include "bgshrink/model.hpp"
#include "bgshrink/types.hpp"

namespace bgshrink::exact {

// Brute-force reference for an arbitrary (possibly redundant) dictionary:
// every one of the 2^m supports is visited. This is the ground truth the
// unitary closed forms are checked against.

inline constexpr std::size_t kMaxAtoms = 20;

/// n x m matrix with unit-norm columns.
class DenseDictionary {
 public:
  /// Throws std::invalid_argument if a column norm differs from 1 by more than 1e-12.
  explicit DenseDictionary(Eigen::MatrixXd d);
  static DenseDictionary from(const Dictionary& dict);

  std::size_t rows() const { return static_cast<std::size_t>(d_.rows()); }
  std::size_t atoms() const { return static_cast<std::size_t>(d_.cols()); }
  const Eigen::MatrixXd& matrix() const { return d_; }

 private:
  Eigen::MatrixXd d_;
};

/// Per-support Gaussian quantities with V_S = diag(sigma_x_k^2, k in S):
///   Q_S = V_S^{-1} + D_S^T D_S / sigma^2,  xhat_S = Q_S^{-1} D_S^T y / sigma^2.
struct SupportTerms {
  std::vector<double> xhat;  // full length m, zero off the support
  double trace_inv_q = 0.0;  // oracle error
  double log_weight = 0.0;   // log t_S
};

SupportTerms support_terms(std::span<const double> y, const DenseDictionary& dict,
                           const ModelParams& params, const SupportMask& support);

/// log t_S = -1/2 log det C_S - 1/2 y^T C_S^{-1} y + sum_S log p + sum_{not S} log(1-p),
/// with det C_S and C_S^{-1} reduced to |S| x |S| work through Q_S.
double log_support_weight(std::span<const double> y, const DenseDictionary& dict,
                          const ModelParams& params, const SupportMask& support);

/// MAP penalty Val(S) = 1/2 ||Q_S^{-1/2} D_S^T y||^2 / sigma^4 - 1/2 log det C_S + log P(S).
double map_objective(std::span<const double> y, const DenseDictionary& dict,
                     const ModelParams& params, const SupportMask& support);

/// P(S | y) for all supports; index = support bitmask (bit k <=> atom k).
struct SupportPosterior {
  std::size_t atoms = 0;
  std::vector<double> log_weight;  // log t_S
  double log_normalizer = 0.0;     // log t = log sum_S t_S
  std::vector<double> probability;

  double operator[](std::uint64_t bits) const { return probability[bits]; }
};

SupportPosterior support_posterior(std::span<const double> y, const DenseDictionary& dict,
                                   const ModelParams& params);

/// sum_S P(S|y) xhat_S.
Coeffs exact_mmse(std::span<const double> y, const DenseDictionary& dict, const ModelParams& params);

struct MapResult {
  SupportMask support;
  Coeffs xhat;
  double objective = 0.0;
};

/// argmax_S Val(S). Exact ties go to the smaller support, then the smaller bitmask.
MapResult exact_map(std::span<const double> y, const DenseDictionary& dict,
                    const ModelParams& params);

/// sum_S P(S|y) [tr Q_S^{-1} + ||estimate - xhat_S||^2].
double exact_risk(std::span<const double> y, const DenseDictionary& dict, const ModelParams& params,
                  const Coeffs& estimate);

/// E|S| = sum_S P(S|y) |S|.
double exact_expected_support_size(std::span<const double> y, const DenseDictionary& dict,
                                   const ModelParams& params);

/// Enumerated sums of the product weights w(S) = prod_{S} g_i prod_{not S} (1 - g_j):
/// total = sum_S w(S); marginal[k] = sum_{S ∋ k} w(S).
struct WeightSums {
  double total = 0.0;
  std::vector<double> marginal;
};

WeightSums support_weight_sums(std::span<const double> g);

}  // namespace bgshrink::exact
