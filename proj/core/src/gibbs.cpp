#include "admixtope/gibbs.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "admixtope/error.hpp"
#include "admixtope/stats.hpp"

namespace admixtope {

namespace {

void check_shapes(const Dataset& data, const PriorSpec& prior, int k) {
  require(prior.k == k, "gibbs: prior k differs from the state");
  require(prior.d == data.d(), "gibbs: prior d differs from the dataset");
}

}  // namespace

GibbsState make_gibbs_state(const Dataset& data, int k, std::vector<std::uint8_t> z) {
  require(k >= 1 && k <= kMaxK, "gibbs: k out of range");
  require(z.size() == data.symbols().size(), "gibbs: assignment length differs from the token count");
  GibbsState s;
  s.k = k;
  s.d = data.d();
  s.m = data.m();
  s.n = data.n();
  s.z = std::move(z);
  s.doc_topic.assign(static_cast<std::size_t>(s.m) * k, 0);
  s.topic_symbol.assign(static_cast<std::size_t>(k) * (s.d + 1), 0);
  s.topic_total.assign(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < s.m; ++i)
    for (int j = 0; j < s.n; ++j) {
      const int t = s.z[static_cast<std::size_t>(i) * s.n + j];
      require(t < k, "gibbs: assignment outside {0..k-1}");
      ++s.nd(i, t);
      ++s.nw(t, data.at(i, j));
      ++s.topic_total[t];
    }
  return s;
}

GibbsState random_gibbs_state(const Dataset& data, int k, Rng& rng) {
  std::vector<std::uint8_t> z(data.symbols().size());
  for (auto& t : z) t = static_cast<std::uint8_t>(rng.next_u64() % static_cast<std::uint64_t>(k));
  return make_gibbs_state(data, k, std::move(z));
}

bool counts_consistent(const GibbsState& state, const Dataset& data) {
  const GibbsState fresh = make_gibbs_state(data, state.k, state.z);
  return fresh.doc_topic == state.doc_topic && fresh.topic_symbol == state.topic_symbol &&
         fresh.topic_total == state.topic_total;
}

std::vector<double> gibbs_conditional(const GibbsState& state, const Dataset& data, const PriorSpec& prior, int i,
                                      int j) {
  check_shapes(data, prior, state.k);
  const std::size_t tok = static_cast<std::size_t>(i) * state.n + j;
  const int own = state.z[tok];
  const int x = data.at(i, j);
  const double vlam = (state.d + 1) * prior.lambda;
  std::vector<double> w(static_cast<std::size_t>(state.k));
  double total = 0.0;
  for (int t = 0; t < state.k; ++t) {
    const int self = t == own ? 1 : 0;
    w[t] = (state.nd(i, t) - self + prior.gamma[t]) * (state.nw(t, x) - self + prior.lambda) /
           (state.topic_total[t] - self + vlam);
    total += w[t];
  }
  for (auto& v : w) v /= total;
  return w;
}

void gibbs_sweep(GibbsState& s, const Dataset& data, const PriorSpec& prior, Rng& rng, bool debug_recount) {
  check_shapes(data, prior, s.k);
  const double vlam = (s.d + 1) * prior.lambda;
  std::vector<double> w(static_cast<std::size_t>(s.k));
  for (int i = 0; i < s.m; ++i) {
    for (int j = 0; j < s.n; ++j) {
      const std::size_t tok = static_cast<std::size_t>(i) * s.n + j;
      const int x = data.at(i, j);
      const int old = s.z[tok];
      --s.nd(i, old);
      --s.nw(old, x);
      --s.topic_total[old];
      for (int t = 0; t < s.k; ++t)
        w[t] = (s.nd(i, t) + prior.gamma[t]) * (s.nw(t, x) + prior.lambda) / (s.topic_total[t] + vlam);
      const int t = rng.categorical(w);
      s.z[tok] = static_cast<std::uint8_t>(t);
      ++s.nd(i, t);
      ++s.nw(t, x);
      ++s.topic_total[t];
    }
  }
  if (debug_recount && !counts_consistent(s, data))
    throw InvariantViolation("gibbs: count tables drifted from the assignment");
}

std::size_t assignment_index(const std::vector<std::uint8_t>& z, int k) {
  std::size_t idx = 0;
  for (std::size_t t = z.size(); t-- > 0;) idx = idx * static_cast<std::size_t>(k) + z[t];
  return idx;
}

AssignmentPosterior brute_force_posterior(const Dataset& data, const PriorSpec& prior) {
  prior.validate();
  require(prior.d == data.d(), "brute_force_posterior: prior d differs from the dataset");
  const int k = prior.k;
  const int tokens = data.m() * data.n();
  require(std::pow(static_cast<double>(k), tokens) <= 65536.0, "brute_force_posterior: k^(m n) exceeds 2^16");
  std::size_t states = 1;
  for (int t = 0; t < tokens; ++t) states *= static_cast<std::size_t>(k);
  const auto lg = [](double x) { return boost::math::lgamma(x); };
  double g_total = 0.0;
  for (double g : prior.gamma) g_total += g;
  const double vlam = (data.d() + 1) * prior.lambda;
  std::vector<double> logw(states);
  std::vector<std::uint8_t> z(static_cast<std::size_t>(tokens));
  for (std::size_t s = 0; s < states; ++s) {
    std::size_t rest = s;
    for (int t = 0; t < tokens; ++t) {
      z[t] = static_cast<std::uint8_t>(rest % static_cast<std::size_t>(k));
      rest /= static_cast<std::size_t>(k);
    }
    const GibbsState c = make_gibbs_state(data, k, z);
    double lw = 0.0;
    for (int i = 0; i < data.m(); ++i) {
      lw += lg(g_total) - lg(g_total + data.n());
      for (int t = 0; t < k; ++t) lw += lg(prior.gamma[t] + c.nd(i, t)) - lg(prior.gamma[t]);
    }
    for (int t = 0; t < k; ++t) {
      lw += lg(vlam) - lg(vlam + c.topic_total[t]);
      for (int l = 0; l <= data.d(); ++l) lw += lg(prior.lambda + c.nw(t, l)) - lg(prior.lambda);
    }
    logw[s] = lw;
  }
  const double norm = log_sum_exp(logw);
  AssignmentPosterior out{k, tokens, std::vector<double>(states)};
  for (std::size_t s = 0; s < states; ++s) out.prob[s] = std::exp(logw[s] - norm);
  return out;
}

}  // namespace admixtope
