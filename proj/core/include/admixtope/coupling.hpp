#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "admixtope/admixture.hpp"
#include "admixtope/divergence.hpp"

namespace admixtope {

/// Permutation sigma minimizing max_j |theta_j - theta'_sigma(j)| (bottleneck
/// assignment; ties resolved toward the lexicographically first matching found).
std::vector<int> bottleneck_matching(const AdmixtureModel& model, const AdmixtureModel& model2);

struct CouplingEstimate {
  DivergenceEstimate w1;        ///< E|sum_j beta_j (theta_j - theta'_sigma(j))| under a shared beta
  double analytic_bound = 0.0;  ///< max_j |theta_j - theta'_sigma(j)|
  double mean_bound = 0.0;      ///< sum_j E[beta_j] |theta_j - theta'_sigma(j)|
};

/// Shared-beta coupling of the two eta laws; an upper bound on their W1.
/// Requires equal k and identical symmetric mixing laws.
CouplingEstimate wasserstein_shared_beta(const AdmixtureModel& model, const AdmixtureModel& model2,
                                         const std::vector<int>& matching, std::size_t samples, std::uint64_t seed);

}  // namespace admixtope
