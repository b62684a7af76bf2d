#pragma once

#include <vector>

#include "admixtope/admixture.hpp"
#include "admixtope/rng.hpp"

namespace admixtope {

/// Rows iid Dirichlet(lambda 1) on the simplex, truncated to min entry > c0;
/// the mixing law Dirichlet(gamma) is fixed and known.
struct PriorSpec {
  double lambda = 1.0;
  std::vector<double> gamma;
  double c0 = 0.02;
  int k = 1;
  int d = 1;

  /// Throws InvalidArgument on inconsistent or out-of-range fields.
  void validate() const;
  MixingLaw mixing() const { return MixingLaw(gamma); }
};

/// Rejection attempts per row before the truncated draw switches to the
/// pairwise Gibbs kernel.
inline constexpr int kRejectionAttempts = 64;
/// Systematic sweeps over all coordinate pairs in the Gibbs fallback.
inline constexpr int kTruncatedGibbsSweeps = 50;

/// Draws theta row by row from the truncated prior.
AdmixtureModel prior_draw(const PriorSpec& prior, Rng& rng);
/// Draws one row from Dirichlet(alpha) conditioned on min entry > c0.
/// Plain rejection is tried first. When it keeps failing (the untruncated law
/// puts almost no mass in the region) the row comes from
/// truncated_dirichlet_gibbs started at the clamped mean instead.
/// Throws InvalidArgument unless c0 * alpha.size() < 1.
std::vector<double> truncated_dirichlet(std::span<const double> alpha, double c0, Rng& rng);
/// Pairwise Gibbs kernel for the truncated Dirichlet: for each pair (i, j) the
/// share x_i / (x_i + x_j) is redrawn from its Beta(alpha_i, alpha_j) law
/// restricted to keep both entries above c0, by inverse CDF. `start` must be
/// feasible. Leaves the truncated Dirichlet invariant.
std::vector<double> truncated_dirichlet_gibbs(std::span<const double> alpha, double c0, std::vector<double> start,
                                              int sweeps, Rng& rng);

}  // namespace admixtope
