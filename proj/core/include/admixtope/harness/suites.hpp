#pragma once

#include <cstdint>
#include <vector>

#include "admixtope/admixture.hpp"
#include "admixtope/bounds.hpp"
#include "admixtope/harness/config.hpp"
#include "admixtope/polytope.hpp"
#include "admixtope/rng.hpp"

namespace admixtope::harness {

/// k Dirichlet(1) points on the d-simplex.
Polytope random_polytope(Rng& rng, int d, int k);

/// Rows from Dirichlet(1) conditioned on min entry > floor; floor is also the model's c0.
AdmixtureModel random_model(Rng& rng, int k, int d, double floor, const std::vector<double>& gamma);

/// Moves each row by `scale` along a random zero-sum direction, halving the
/// step until every entry stays above the model's c0.
AdmixtureModel perturbed_model(const AdmixtureModel& model, Rng& rng, double scale);

/// Regular triangle on the 2-simplex: vertices (1 - s)/3 + s e_j.
Polytope reference_triangle(double s = 0.6);

/// Triangle model with gamma = 1 (uniform eta on the triangle).
AdmixtureModel triangle_model(const Polytope& triangle);

/// Model over the rows of `rows` with symmetric gamma = 1 and c0 = 0.
AdmixtureModel uniform_mixing_model(const std::vector<Point>& rows);

/// The base and capped polytopes as equal-size models: the cut vertex is
/// repeated once per cap point so both share one mixing law.
std::pair<AdmixtureModel, AdmixtureModel> capped_model_pair(const Polytope& base, std::size_t vertex, double eps);

/// Log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, int count);

/// Instances for one suite, with per-instance seeds derived from `seed`.
std::vector<BoundInstance> build_suite(const SuiteConfig& suite, std::uint64_t seed);

/// bound_check plus the suite's tolerance override on exponent bounds.
BoundReport run_bound(const SuiteConfig& suite, const BoundInstance& inst, const BoundBudget& budget);

}  // namespace admixtope::harness
