#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "admixtope/admixture.hpp"
#include "admixtope/polytope.hpp"
#include "admixtope/prior.hpp"

namespace admixtope {

struct PosteriorOptions {
  int iters = 1000;
  std::optional<int> burnin;  ///< default iters / 2
  std::optional<int> thin;    ///< default: keep at most kMaxRetained samples overall
  int chains = 1;
  int threads = 1;
  bool debug_recount = false;
};

inline constexpr int kMaxRetained = 2000;
inline constexpr double kRhatFlag = 1.1;

struct PosteriorSample {
  int chain = 0;
  int iter = 0;  ///< 1-based sweep index
  double loglik = 0.0;
  double d_m = 0.0;  ///< to the reference polytope, 0 without one
  double d_h = 0.0;
  Eigen::MatrixXd theta;
};

/// Retained samples of all chains, chain-major.
struct PosteriorChain {
  std::vector<PosteriorSample> samples;
  int iters = 0;
  int burnin = 0;
  int thin = 1;
  int chains = 1;
  std::uint64_t seed = 0;
  double rhat = 1.0;  ///< split R-hat of loglik across chains
  bool rhat_flag = false;
  bool has_reference = false;
};

/// Collapsed Gibbs on z; after every retained sweep theta_t is drawn from
/// Dirichlet(lambda + topic counts) restricted to min entry > c0. Chain c
/// uses the stream derive_seed(seed, {c}). loglik is log p(x | z, theta) plus
/// the Dirichlet-multinomial log p(z | gamma).
PosteriorChain posterior_sample(const Dataset& data, const PriorSpec& prior, const PosteriorOptions& options,
                                std::uint64_t seed, const Polytope* reference = nullptr);

/// Recomputes split R-hat on loglik.
double chain_rhat(const PosteriorChain& chain);

struct ContractionStat {
  double prob_exceed = 0.0;
  double threshold = 0.0;        ///< C delta_mn
  double dm_q[3] = {0, 0, 0};    ///< 0.1, 0.5, 0.9
  double dh_q[3] = {0, 0, 0};
};

/// Fraction of samples with dM >= C delta_mn (C = +infinity gives 0), and
/// dM/dH quantiles. Throws InvalidArgument on an empty chain.
ContractionStat contraction_stat(const PosteriorChain& chain, double C, double delta_mn);

}  // namespace admixtope
