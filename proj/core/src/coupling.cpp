#include "admixtope/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "admixtope/error.hpp"

namespace admixtope {

namespace {

Eigen::MatrixXd row_distances(const AdmixtureModel& a, const AdmixtureModel& b) {
  Eigen::MatrixXd dist(a.k(), b.k());
  for (int i = 0; i < a.k(); ++i)
    for (int j = 0; j < b.k(); ++j) dist(i, j) = (a.theta().row(i) - b.theta().row(j)).norm();
  return dist;
}

// Perfect matching using only pairs with dist <= t (Kuhn's augmenting paths).
bool match_below(const Eigen::MatrixXd& dist, double t, std::vector<int>& match_of_right) {
  const int k = static_cast<int>(dist.rows());
  match_of_right.assign(static_cast<std::size_t>(k), -1);
  for (int i = 0; i < k; ++i) {
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    std::function<bool(int)> augment = [&](int u) {
      for (int v = 0; v < k; ++v) {
        if (dist(u, v) > t || seen[v]) continue;
        seen[v] = 1;
        if (match_of_right[v] < 0 || augment(match_of_right[v])) {
          match_of_right[v] = u;
          return true;
        }
      }
      return false;
    };
    if (!augment(i)) return false;
  }
  return true;
}

}  // namespace

std::vector<int> bottleneck_matching(const AdmixtureModel& model, const AdmixtureModel& model2) {
  require(model.k() == model2.k() && model.d() == model2.d(), "bottleneck_matching: models differ in k or d");
  const Eigen::MatrixXd dist = row_distances(model, model2);
  std::vector<double> levels(dist.data(), dist.data() + dist.size());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::size_t lo = 0, hi = levels.size() - 1;
  std::vector<int> right;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (match_below(dist, levels[mid], right))
      hi = mid;
    else
      lo = mid + 1;
  }
  match_below(dist, levels[lo], right);
  std::vector<int> sigma(static_cast<std::size_t>(model.k()));
  for (int v = 0; v < model.k(); ++v) sigma[right[v]] = v;
  return sigma;
}

CouplingEstimate wasserstein_shared_beta(const AdmixtureModel& model, const AdmixtureModel& model2,
                                         const std::vector<int>& matching, std::size_t samples, std::uint64_t seed) {
  require(model.k() == model2.k(), "wasserstein_shared_beta: models have different k");
  require(model.d() == model2.d(), "wasserstein_shared_beta: models use different alphabets");
  require(model.mixing().symmetric() && model2.mixing().symmetric(),
          "wasserstein_shared_beta: the shared-beta coupling needs symmetric mixing laws");
  require(model.mixing().gamma() == model2.mixing().gamma(),
          "wasserstein_shared_beta: the shared-beta coupling needs identical mixing laws");
  const int k = model.k();
  require(static_cast<int>(matching.size()) == k, "wasserstein_shared_beta: matching has the wrong length");
  std::vector<char> used(static_cast<std::size_t>(k), 0);
  for (int s : matching) {
    require(s >= 0 && s < k && !used[s], "wasserstein_shared_beta: matching is not a permutation");
    used[s] = 1;
  }
  require(samples >= 2, "wasserstein_shared_beta: need at least two samples");
  Eigen::MatrixXd diff(k, model.d() + 1);
  for (int j = 0; j < k; ++j) diff.row(j) = model.theta().row(j) - model2.theta().row(matching[j]);
  CouplingEstimate out;
  const double g_total = model.mixing().total();
  for (int j = 0; j < k; ++j) {
    const double nj = diff.row(j).norm();
    out.analytic_bound = std::max(out.analytic_bound, nj);
    out.mean_bound += model.mixing().gamma()[j] / g_total * nj;
  }
  Rng rng(seed);
  double s = 0.0, ss = 0.0;
  for (std::size_t t = 0; t < samples; ++t) {
    const auto beta = sample_beta(model.mixing(), rng);
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(model.d() + 1);
    for (int j = 0; j < k; ++j) v += beta[j] * diff.row(j);
    const double c = v.norm();
    s += c;
    ss += c * c;
  }
  const double n = static_cast<double>(samples);
  const double mu = s / n;
  const double var = std::max(0.0, (ss - n * mu * mu) / (n - 1.0));
  out.w1.kind = DivergenceKind::W1;
  out.w1.method = DivergenceMethod::Coupling;
  out.w1.value = mu;
  out.w1.std_error = std::sqrt(var / n);
  out.w1.underpowered = out.w1.std_error > mu / 2.0;
  return out;
}

}  // namespace admixtope
