#include "admixtope/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include <boost/math/special_functions/gamma.hpp>

#include "admixtope/metrics.hpp"
#include "admixtope/parallel.hpp"

namespace admixtope {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMassTol = 1e-6;

double log_multinomial(const std::vector<int>& c) {
  int n = 0;
  double s = 0.0;
  for (int v : c) {
    n += v;
    s -= boost::math::lgamma(v + 1.0);
  }
  return s + boost::math::lgamma(n + 1.0);
}

void check_enumerable(int n, int d) {
  require(n >= 1, "exact divergence: n must be at least 1");
  require(std::pow(static_cast<double>(d + 1), n) <= kMaxEnumeratedSequences,
          "exact divergence: (d+1)^n exceeds 2^20 outcomes");
}

}  // namespace

const char* to_string(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::K: return "K";
    case DivergenceKind::K2: return "K2";
    case DivergenceKind::H2: return "h2";
    case DivergenceKind::V: return "V";
    case DivergenceKind::W1: return "W1";
  }
  return "?";
}

std::vector<std::vector<int>> count_types(int n, int d) {
  require(n >= 0 && d >= 0, "count_types: n and d must be nonnegative");
  std::vector<std::vector<int>> out;
  std::vector<int> c(static_cast<std::size_t>(d) + 1, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == d) {
      c[pos] = left;
      out.push_back(c);
      return;
    }
    for (int v = left; v >= 0; --v) {
      c[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, n);
  return out;
}

OutcomeTable outcome_table(const AdmixtureModel& model, int n, int threads, MarginalMethod method) {
  check_enumerable(n, model.d());
  require(method != MarginalMethod::MonteCarlo, "outcome_table: needs an exact marginal method");
  OutcomeTable t;
  t.counts = count_types(n, model.d());
  for (const auto& c : t.counts) t.log_multiplicity.push_back(log_multinomial(c));
  t.logp = parallel_map(t.counts.size(), threads,
                        [&](std::size_t i) { return marginal_loglik_counts(model, t.counts[i], method).logp; });
  return t;
}

ExactDivergences divergences_exact(const AdmixtureModel& model, const AdmixtureModel& model2, int n, int threads) {
  require(model.d() == model2.d(), "exact divergence: models use different alphabets");
  const OutcomeTable tp = outcome_table(model, n, threads);
  const OutcomeTable tq = outcome_table(model2, n, threads);
  ExactDivergences out;
  double k1 = 0.0, k2 = 0.0, tv = 0.0;
  bool infinite = false;
  for (std::size_t i = 0; i < tp.counts.size(); ++i) {
    const double lm = tp.log_multiplicity[i];
    const double lp = tp.logp[i], lq = tq.logp[i];
    const double p = lp == kNegInf ? 0.0 : std::exp(lm + lp);
    const double q = lq == kNegInf ? 0.0 : std::exp(lm + lq);
    out.total_p += p;
    out.total_q += q;
    tv += std::abs(p - q);
    if (p > 0.0) {
      if (q == 0.0) {
        infinite = true;
      } else {
        const double r = lp - lq;
        k1 += p * r;
        k2 += p * r * r;
      }
    }
  }
  if (std::abs(out.total_p - 1.0) > kMassTol || std::abs(out.total_q - 1.0) > kMassTol)
    throw InvariantViolation("exact divergence: enumerated probabilities do not sum to 1");
  // h^2 as 1/2 sum (sqrt p - sqrt q)^2, accumulated separately to avoid 1 - BC cancellation.
  double h2 = 0.0;
  for (std::size_t i = 0; i < tp.counts.size(); ++i) {
    const double lm = tp.log_multiplicity[i];
    const double sp = tp.logp[i] == kNegInf ? 0.0 : std::exp(0.5 * (lm + tp.logp[i]));
    const double sq = tq.logp[i] == kNegInf ? 0.0 : std::exp(0.5 * (lm + tq.logp[i]));
    h2 += (sp - sq) * (sp - sq);
  }
  out.h2 = std::min(1.0, 0.5 * h2);
  out.V = std::min(1.0, 0.5 * tv);
  out.K = infinite ? ExtendedReal::infinity() : ExtendedReal::finite(std::max(0.0, k1));
  out.K2 = infinite ? ExtendedReal::infinity() : ExtendedReal::finite(std::max(0.0, k2));
  return out;
}

DivergenceEstimate divergence_exact(const AdmixtureModel& model, const AdmixtureModel& model2, int n,
                                    DivergenceKind kind, int threads) {
  require(kind != DivergenceKind::W1, "divergence_exact: W1 is available only through the coupling");
  const ExactDivergences e = divergences_exact(model, model2, n, threads);
  DivergenceEstimate out;
  out.kind = kind;
  out.method = DivergenceMethod::ExactEnum;
  switch (kind) {
    case DivergenceKind::K:
      out.value = e.K.value;
      out.infinite = e.K.infinite;
      break;
    case DivergenceKind::K2:
      out.value = e.K2.value;
      out.infinite = e.K2.infinite;
      break;
    case DivergenceKind::H2: out.value = e.h2; break;
    case DivergenceKind::V: out.value = e.V; break;
    case DivergenceKind::W1: break;
  }
  return out;
}

MonteCarloDivergence divergence_mc(const AdmixtureModel& model, const AdmixtureModel& model2, int n,
                                   DivergenceKind kind, std::size_t samples, std::uint64_t seed) {
  require(kind == DivergenceKind::K || kind == DivergenceKind::K2 || kind == DivergenceKind::H2,
          "divergence_mc: kind must be K, K2 or h2");
  require(model.d() == model2.d(), "divergence_mc: models use different alphabets");
  require(model.c0() > 0.0 && model2.c0() > 0.0, "divergence_mc: both models need an interior floor c0 > 0");
  require(n >= 1 && n <= kMaxN, "divergence_mc: n out of range");
  require(samples >= 2, "divergence_mc: need at least two samples");
  Rng rng(seed);
  std::map<std::vector<int>, double> memo;
  std::vector<double> values(samples);
  MonteCarloDivergence out;
  out.log_ratio_envelope = n * std::log(1.0 / std::min(model.c0(), model2.c0()));
  std::vector<double> w(static_cast<std::size_t>(model.d()) + 1);
  std::vector<int> counts(w.size());
  for (auto& v : values) {
    const Point eta = sample_eta(model, rng);
    for (std::size_t l = 0; l < w.size(); ++l) w[l] = eta(static_cast<Eigen::Index>(l));
    std::fill(counts.begin(), counts.end(), 0);
    for (int j = 0; j < n; ++j) ++counts[rng.categorical(w)];
    auto it = memo.find(counts);
    if (it == memo.end()) {
      const double lp = marginal_loglik_counts(model, counts, MarginalMethod::ExactMoment).logp;
      const double lq = marginal_loglik_counts(model2, counts, MarginalMethod::ExactMoment).logp;
      it = memo.emplace(counts, lp - lq).first;
    }
    const double r = it->second;
    out.max_abs_log_ratio = std::max(out.max_abs_log_ratio, std::abs(r));
    switch (kind) {
      case DivergenceKind::K: v = r; break;
      case DivergenceKind::K2: v = r * r; break;
      default: v = 1.0 - std::exp(-0.5 * r); break;
    }
  }
  double s = 0.0;
  for (double v : values) s += v;
  const double mu = s / static_cast<double>(samples);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  out.estimate.kind = kind;
  out.estimate.method = DivergenceMethod::MonteCarlo;
  out.estimate.value = mu;
  out.estimate.std_error = std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples));
  out.estimate.underpowered = out.estimate.std_error > std::abs(mu) / 2.0;
  return out;
}

HellingerInformation hellinger_information_at(const HellingerInformation& evaluated, double delta) {
  require(delta >= 0.0, "hellinger_information: delta must be nonnegative");
  HellingerInformation out = evaluated;
  out.psi = ExtendedReal::infinity();
  out.argmin.reset();
  for (std::size_t i = 0; i < out.d_h.size(); ++i) {
    if (out.d_h[i] < delta / 2.0) continue;
    const ExtendedReal v = ExtendedReal::finite(out.h2[i]);
    if (v < out.psi) {
      out.psi = v;
      out.argmin = i;
    }
  }
  return out;
}

HellingerInformation hellinger_information(const AdmixtureModel& model0, std::span<const AdmixtureModel> candidates,
                                           int n, double delta, int threads) {
  HellingerInformation h;
  const auto rows = parallel_map(candidates.size(), threads, [&](std::size_t i) {
    return std::pair{hausdorff(model0.polytope(), candidates[i].polytope()),
                     divergences_exact(model0, candidates[i], n).h2};
  });
  for (const auto& [dh, h2] : rows) {
    h.d_h.push_back(dh);
    h.h2.push_back(h2);
  }
  return hellinger_information_at(h, delta);
}

double phi_from_psi(double psi, int n, double c0, double C0) {
  require(n >= 1, "phi_from_psi: n must be at least 1");
  require(c0 > 0.0 && C0 > 0.0, "phi_from_psi: c0 and C0 must be positive");
  return c0 * psi / (4.0 * n * C0);
}

KlMass prior_kl_mass(const PriorSpec& prior, const AdmixtureModel& model0, std::span<const double> deltas, int n,
                     std::size_t samples, std::uint64_t seed, int threads) {
  require(samples >= 1, "prior_kl_mass: need at least one prior draw");
  require(prior.d == model0.d(), "prior_kl_mass: prior and model use different alphabets");
  for (double dl : deltas) require(dl >= 0.0, "prior_kl_mass: delta must be nonnegative");
  Rng rng(seed);
  std::vector<AdmixtureModel> draws;
  draws.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) draws.push_back(prior_draw(prior, rng));
  const auto divs = parallel_map(samples, threads, [&](std::size_t i) {
    const ExactDivergences e = divergences_exact(model0, draws[i], n);
    return std::pair{e.K, e.K2};
  });
  KlMass out;
  for (const auto& [k1, k2] : divs) {
    out.K.push_back(k1);
    out.K2.push_back(k2);
  }
  const double total = static_cast<double>(samples);
  for (double dl : deltas) {
    KlMassPoint pt;
    pt.delta = dl;
    if (std::isinf(dl)) {
      pt.hits = samples;
    } else {
      const ExtendedReal r = ExtendedReal::finite(dl * dl);
      for (std::size_t i = 0; i < samples; ++i)
        if (out.K[i] <= r && out.K2[i] <= r) ++pt.hits;
    }
    pt.mass = static_cast<double>(pt.hits) / total;
    pt.std_error = std::sqrt(pt.mass * (1.0 - pt.mass) / total);
    if (pt.hits == 0) pt.upper_bound_if_zero = 3.0 / total;
    out.points.push_back(pt);
  }
  return out;
}

}  // namespace admixtope
