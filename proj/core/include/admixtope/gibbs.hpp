#pragma once

#include <cstdint>
#include <vector>

#include "admixtope/admixture.hpp"
#include "admixtope/prior.hpp"
#include "admixtope/rng.hpp"

namespace admixtope {

/// Topic assignments (0-based, one per token in row-major order) and the
/// count tables the collapsed conditional reads.
struct GibbsState {
  int k = 1;
  int d = 1;
  int m = 0;
  int n = 0;
  std::vector<std::uint8_t> z;
  std::vector<int> doc_topic;     ///< m x k
  std::vector<int> topic_symbol;  ///< k x (d+1)
  std::vector<int> topic_total;   ///< k

  int& nd(int i, int t) { return doc_topic[static_cast<std::size_t>(i) * k + t]; }
  int& nw(int t, int l) { return topic_symbol[static_cast<std::size_t>(t) * (d + 1) + l]; }
  int nd(int i, int t) const { return doc_topic[static_cast<std::size_t>(i) * k + t]; }
  int nw(int t, int l) const { return topic_symbol[static_cast<std::size_t>(t) * (d + 1) + l]; }
};

/// Builds the count tables for a given assignment.
GibbsState make_gibbs_state(const Dataset& data, int k, std::vector<std::uint8_t> z);
/// Uniformly random initial assignment.
GibbsState random_gibbs_state(const Dataset& data, int k, Rng& rng);
/// True when the count tables equal a recount from z.
bool counts_consistent(const GibbsState& state, const Dataset& data);

/// P(z_ij = t | rest) for token (i, j), normalized; the token's own counts are excluded.
std::vector<double> gibbs_conditional(const GibbsState& state, const Dataset& data, const PriorSpec& prior, int i,
                                      int j);

/// One systematic-scan sweep over all tokens. With debug_recount the count
/// tables are recounted afterwards and a mismatch throws InvariantViolation.
void gibbs_sweep(GibbsState& state, const Dataset& data, const PriorSpec& prior, Rng& rng, bool debug_recount = false);

/// Exact posterior over all k^(m n) assignments (index: token t is digit t in base k).
struct AssignmentPosterior {
  int k = 1;
  int tokens = 0;
  std::vector<double> prob;
};

/// Base-k index of an assignment.
std::size_t assignment_index(const std::vector<std::uint8_t>& z, int k);

/// Dirichlet-multinomial marginalization of beta and theta for every
/// assignment (the untruncated prior). Throws InvalidArgument when k^(m n) > 2^16.
AssignmentPosterior brute_force_posterior(const Dataset& data, const PriorSpec& prior);

}  // namespace admixtope
