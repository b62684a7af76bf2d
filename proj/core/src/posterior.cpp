#include "admixtope/posterior.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "admixtope/error.hpp"
#include "admixtope/gibbs.hpp"
#include "admixtope/metrics.hpp"
#include "admixtope/parallel.hpp"
#include "admixtope/stats.hpp"

namespace admixtope {

namespace {

double complete_loglik(const GibbsState& s, const Dataset& data, const PriorSpec& prior, const Eigen::MatrixXd& theta) {
  const auto lg = [](double x) { return boost::math::lgamma(x); };
  double ll = 0.0;
  for (int t = 0; t < s.k; ++t)
    for (int l = 0; l <= s.d; ++l)
      if (s.nw(t, l) > 0) ll += s.nw(t, l) * std::log(theta(t, l));
  double g_total = 0.0;
  for (double g : prior.gamma) g_total += g;
  for (int i = 0; i < data.m(); ++i) {
    ll += lg(g_total) - lg(g_total + data.n());
    for (int t = 0; t < s.k; ++t) ll += lg(prior.gamma[t] + s.nd(i, t)) - lg(prior.gamma[t]);
  }
  return ll;
}

std::vector<PosteriorSample> run_chain(const Dataset& data, const PriorSpec& prior, const PosteriorOptions& o,
                                       int burnin, int thin, int chain, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(chain)}));
  GibbsState state = random_gibbs_state(data, prior.k, rng);
  std::vector<PosteriorSample> out;
  std::vector<double> alpha(static_cast<std::size_t>(prior.d) + 1);
  for (int it = 1; it <= o.iters; ++it) {
    gibbs_sweep(state, data, prior, rng, o.debug_recount);
    if (it <= burnin || (it - burnin) % thin != 0) continue;
    PosteriorSample s;
    s.chain = chain;
    s.iter = it;
    s.theta.resize(prior.k, prior.d + 1);
    for (int t = 0; t < prior.k; ++t) {
      for (int l = 0; l <= prior.d; ++l) alpha[l] = prior.lambda + state.nw(t, l);
      const auto row = truncated_dirichlet(alpha, prior.c0, rng);
      for (int l = 0; l <= prior.d; ++l) s.theta(t, l) = row[l];
    }
    s.loglik = complete_loglik(state, data, prior, s.theta);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

double chain_rhat(const PosteriorChain& chain) {
  std::vector<std::vector<double>> per(static_cast<std::size_t>(chain.chains));
  for (const auto& s : chain.samples) per[s.chain].push_back(s.loglik);
  return split_rhat(per);
}

PosteriorChain posterior_sample(const Dataset& data, const PriorSpec& prior, const PosteriorOptions& o,
                                std::uint64_t seed, const Polytope* reference) {
  prior.validate();
  require(prior.d == data.d(), "posterior_sample: prior d differs from the dataset");
  require(o.iters >= 1 && o.chains >= 1, "posterior_sample: iters and chains must be positive");
  const int burnin = o.burnin.value_or(o.iters / 2);
  require(burnin >= 0 && burnin < o.iters, "posterior_sample: need 0 <= burnin < iters");
  const long kept = static_cast<long>(o.iters - burnin) * o.chains;
  const int thin = o.thin.value_or(static_cast<int>(std::max(1L, (kept + kMaxRetained - 1) / kMaxRetained)));
  require(thin >= 1, "posterior_sample: thin must be positive");
  if (reference) require(reference->ambient_dim() == data.d() + 1, "posterior_sample: reference has the wrong dimension");

  PosteriorChain out;
  out.iters = o.iters;
  out.burnin = burnin;
  out.thin = thin;
  out.chains = o.chains;
  out.seed = seed;
  out.has_reference = reference != nullptr;
  const auto per_chain = parallel_map(static_cast<std::size_t>(o.chains), o.threads, [&](std::size_t c) {
    return run_chain(data, prior, o, burnin, thin, static_cast<int>(c), seed);
  });
  for (const auto& c : per_chain) out.samples.insert(out.samples.end(), c.begin(), c.end());
  if (reference) {
    const auto dist = parallel_map(out.samples.size(), o.threads, [&](std::size_t i) {
      std::vector<Point> rows;
      for (int t = 0; t < prior.k; ++t) rows.emplace_back(out.samples[i].theta.row(t).transpose());
      const Polytope g = extreme_points(std::move(rows), true);
      return std::pair{min_matching(*reference, g), hausdorff(*reference, g)};
    });
    for (std::size_t i = 0; i < dist.size(); ++i) {
      out.samples[i].d_m = dist[i].first;
      out.samples[i].d_h = dist[i].second;
    }
  }
  out.rhat = chain_rhat(out);
  out.rhat_flag = !(out.rhat <= kRhatFlag);
  return out;
}

ContractionStat contraction_stat(const PosteriorChain& chain, double C, double delta_mn) {
  require(!chain.samples.empty(), "contraction_stat: empty chain");
  require(C >= 0.0 && delta_mn > 0.0, "contraction_stat: need C >= 0 and delta_mn > 0");
  ContractionStat st;
  st.threshold = C * delta_mn;
  std::vector<double> dm, dh;
  std::size_t exceed = 0;
  for (const auto& s : chain.samples) {
    dm.push_back(s.d_m);
    dh.push_back(s.d_h);
    if (!std::isinf(C) && s.d_m >= st.threshold) ++exceed;
  }
  st.prob_exceed = static_cast<double>(exceed) / static_cast<double>(chain.samples.size());
  const double qs[3] = {0.1, 0.5, 0.9};
  for (int i = 0; i < 3; ++i) {
    st.dm_q[i] = quantile(dm, qs[i]);
    st.dh_q[i] = quantile(dh, qs[i]);
  }
  return st;
}

}  // namespace admixtope
