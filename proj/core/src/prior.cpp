#include "admixtope/prior.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "admixtope/error.hpp"

namespace admixtope {

void PriorSpec::validate() const {
  require(std::isfinite(lambda) && lambda > 0.0, "prior: lambda must be positive");
  require(k >= 1 && k <= kMaxK, "prior: k out of range");
  require(d >= 1 && d <= kMaxD, "prior: d out of range");
  require(static_cast<int>(gamma.size()) == k, "prior: gamma length must equal k");
  require(std::isfinite(c0) && c0 >= 0.0 && c0 < 1.0 / (d + 1), "prior: c0 must lie in [0, 1/(d+1))");
  MixingLaw check(gamma);
}

namespace {

// Draws the distance from an endpoint under a density proportional to
// exp(-rate * x) on [0, width].
double truncated_exponential(double rate, double width, Rng& rng) {
  const double v = rng.uniform_open();
  if (rate * width < 1e-12) return v * width;
  return -std::log1p(-v * -std::expm1(-rate * width)) / rate;
}

// One coordinate-pair update: r = x_i / t ~ Beta(a, b) restricted to [lo, hi].
// The CDF is evaluated in the tail the interval lies in, so the interval mass
// keeps full relative precision however far out it is.
double truncated_beta_share(double a, double b, double lo, double hi, Rng& rng) {
  if (hi - lo <= 0.0) return 0.5 * (lo + hi);
  const double mean = a / (a + b);
  const bool upper = lo >= mean;
  double r;
  if (upper) {
    const double q_lo = boost::math::ibetac(a, b, lo);
    const double q_hi = boost::math::ibetac(a, b, hi);
    r = q_lo > 0.0 ? boost::math::ibetac_inv(a, b, q_hi + rng.uniform_open() * (q_lo - q_hi)) : -1.0;
  } else {
    const double p_lo = boost::math::ibeta(a, b, lo);
    const double p_hi = boost::math::ibeta(a, b, hi);
    r = p_hi > 0.0 ? boost::math::ibeta_inv(a, b, p_lo + rng.uniform_open() * (p_hi - p_lo)) : -1.0;
  }
  if (r < 0.0) {
    // Both tail probabilities underflow: the mass hugs the endpoint nearer the
    // mean, where the log density is locally linear.
    const double e = upper ? lo : hi;
    const double slope = std::abs((a - 1.0) / e - (b - 1.0) / (1.0 - e));
    const double x = truncated_exponential(slope, hi - lo, rng);
    r = upper ? lo + x : hi - x;
  }
  return std::clamp(r, lo, hi);
}

}  // namespace

std::vector<double> truncated_dirichlet_gibbs(std::span<const double> alpha, double c0, std::vector<double> x,
                                              int sweeps, Rng& rng) {
  const std::size_t K = alpha.size();
  require(x.size() == K, "truncated Dirichlet: start has the wrong length");
  for (double v : x) require(v > c0, "truncated Dirichlet: start must be feasible");
  for (int s = 0; s < sweeps; ++s) {
    for (std::size_t i = 0; i < K; ++i) {
      for (std::size_t j = i + 1; j < K; ++j) {
        const double t = x[i] + x[j];
        const double lo = c0 / t;
        const double r = truncated_beta_share(alpha[i], alpha[j], lo, 1.0 - lo, rng);
        x[i] = r * t;
        x[j] = t - x[i];
      }
    }
  }
  return x;
}

std::vector<double> truncated_dirichlet(std::span<const double> alpha, double c0, Rng& rng) {
  require(c0 >= 0.0 && c0 * static_cast<double>(alpha.size()) < 1.0, "truncated Dirichlet: infeasible floor");
  for (int attempt = 0; attempt < kRejectionAttempts; ++attempt) {
    auto row = rng.dirichlet(alpha);
    if (c0 <= 0.0 || *std::min_element(row.begin(), row.end()) > c0) return row;
  }
  double total = 0.0;
  for (double a : alpha) total += a;
  const double slack = 1.0 - c0 * static_cast<double>(alpha.size());
  std::vector<double> start(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) start[i] = c0 + slack * alpha[i] / total;
  return truncated_dirichlet_gibbs(alpha, c0, std::move(start), kTruncatedGibbsSweeps, rng);
}

AdmixtureModel prior_draw(const PriorSpec& prior, Rng& rng) {
  prior.validate();
  Eigen::MatrixXd theta(prior.k, prior.d + 1);
  const std::vector<double> alpha(static_cast<std::size_t>(prior.d) + 1, prior.lambda);
  for (int j = 0; j < prior.k; ++j) {
    const auto row = truncated_dirichlet(alpha, prior.c0, rng);
    for (int l = 0; l <= prior.d; ++l) theta(j, l) = row[l];
  }
  return AdmixtureModel(std::move(theta), prior.mixing(), prior.c0);
}

}  // namespace admixtope
