#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "admixtope/admixture.hpp"

namespace admixtope {

enum class MarginalMethod {
  /// Adaptive tanh-sinh quadrature over beta (k <= 3).
  ExactQuadrature,
  /// Closed-form Dirichlet moment expansion of prod_l eta_l^{c_l} (any k).
  ExactMoment,
  /// Average of prod_j eta_{X_j} over prior draws of eta.
  MonteCarlo,
};

struct MarginalBudget {
  double rel_tol = 1e-8;                 ///< quadrature
  std::size_t max_terms = 5'000'000;     ///< moment expansion work units
  std::size_t samples = 100'000;         ///< Monte Carlo draws
  std::uint64_t seed = 0x5eed;
};

struct MarginalResult {
  double logp = 0.0;       ///< -infinity when the row has probability zero
  double std_error = 0.0;  ///< delta-method standard error of logp (Monte Carlo only)
};

/// log p(row) with eta integrated out under the model's mixing law.
/// Throws Unsupported for quadrature with k > 3 and BudgetExceeded when the
/// tolerance or term budget cannot be met.
MarginalResult marginal_loglik(const AdmixtureModel& model, std::span<const std::uint8_t> row,
                               MarginalMethod method, const MarginalBudget& budget = {});

/// Same, from symbol counts (the marginal depends on the row only through them).
MarginalResult marginal_loglik_counts(const AdmixtureModel& model, std::span<const int> counts,
                                      MarginalMethod method, const MarginalBudget& budget = {});

struct RegularityPoint {
  double eps = 0.0;
  double prob = 0.0;
  double std_error = 0.0;
};

struct RegularityProbe {
  std::vector<RegularityPoint> points;
  /// Least-squares slope of log prob on log eps over the points with prob > 0
  /// (0 with fewer than two such points).
  double exponent = 0.0;
};

/// Monte Carlo estimate of P(|eta - eta0| <= eps) for each eps, from one
/// shared set of `samples` draws of eta.
RegularityProbe regularity_probe(const AdmixtureModel& model, const Point& eta0, std::span<const double> eps_list,
                                 std::size_t samples, std::uint64_t seed);

}  // namespace admixtope
