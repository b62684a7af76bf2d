#include "admixtope/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "admixtope/error.hpp"
#include "admixtope/stats.hpp"

namespace admixtope {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lgam(double x) { return boost::math::lgamma(x); }

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

// Calls fn(a) for every composition a of `total` into `parts` nonnegative parts.
void for_each_composition(int total, int parts, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> a(static_cast<std::size_t>(parts), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == parts - 1) {
      a[pos] = left;
      fn(a);
      return;
    }
    for (int v = left; v >= 0; --v) {
      a[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, total);
}

// E[prod_l eta_l^{c_l}] with eta = sum_j beta_j theta_j and beta ~ Dirichlet(gamma):
// expand each power multinomially and integrate the beta monomials in closed form.
double log_moment(const AdmixtureModel& model, std::span<const int> counts, std::size_t max_terms) {
  const int k = model.k();
  const auto& gamma = model.mixing().gamma();
  const Eigen::MatrixXd& theta = model.theta();
  std::map<std::vector<int>, double> states{{std::vector<int>(static_cast<std::size_t>(k), 0), 0.0}};
  std::size_t work = 0;
  int n = 0;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    const int c = counts[l];
    if (c == 0) continue;
    n += c;
    std::vector<std::pair<std::vector<int>, double>> comps;
    for_each_composition(c, k, [&](const std::vector<int>& a) {
      double w = lgam(c + 1.0);
      for (int j = 0; j < k; ++j) {
        if (a[j] == 0) continue;
        const double t = theta(j, static_cast<Eigen::Index>(l));
        if (t <= 0.0) return;
        w += a[j] * std::log(t) - lgam(a[j] + 1.0);
      }
      comps.emplace_back(a, w);
    });
    work += states.size() * comps.size();
    if (work > max_terms) throw BudgetExceeded("marginal moment expansion exceeds its term budget");
    std::map<std::vector<int>, double> next;
    for (const auto& [s, w] : states) {
      for (const auto& [a, wa] : comps) {
        std::vector<int> t = s;
        for (int j = 0; j < k; ++j) t[j] += a[j];
        auto [it, inserted] = next.try_emplace(std::move(t), w + wa);
        if (!inserted) it->second = log_add(it->second, w + wa);
      }
    }
    states = std::move(next);
  }
  const double g_total = model.mixing().total();
  double logp = kNegInf;
  for (const auto& [s, w] : states) {
    double term = w + lgam(g_total) - lgam(g_total + n);
    for (int j = 0; j < k; ++j) term += lgam(gamma[j] + s[j]) - lgam(gamma[j]);
    logp = log_add(logp, term);
  }
  return logp;
}

double log_integrand(const AdmixtureModel& model, std::span<const int> counts, std::span<const double> beta) {
  double s = 0.0;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    if (counts[l] == 0) continue;
    double eta = 0.0;
    for (int j = 0; j < model.k(); ++j) eta += beta[j] * model.theta()(j, static_cast<Eigen::Index>(l));
    if (eta <= 0.0) return kNegInf;
    s += counts[l] * std::log(eta);
  }
  return s;
}

double log_beta_density(double u, double uc, double a, double b) {
  return (a - 1.0) * std::log(u) + (b - 1.0) * std::log(uc) - (lgam(a) + lgam(b) - lgam(a + b));
}

// Integrates f over (0, 1); f receives (u, 1 - u) computed without cancellation.
double integrate_unit(const std::function<double(double, double)>& f, double rel_tol, double* error) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  double l1 = 0.0;
  auto g = [&](double x, double xc) {
    // xc is the signed distance to the nearer endpoint of [0, 1].
    const double u = x < 0.5 ? (xc < 0.0 ? -xc : x) : x;
    const double uc = x < 0.5 ? 1.0 - u : (xc > 0.0 ? xc : 1.0 - x);
    return f(u, uc);
  };
  try {
    return integrator.integrate(g, 0.0, 1.0, rel_tol, error, &l1);
  } catch (const std::exception& e) {
    throw BudgetExceeded(std::string("marginal quadrature failed: ") + e.what());
  }
}

// tanh-sinh reports the last level difference, which trails the true error;
// asking for a tighter target lets the reported estimate meet rel_tol.
constexpr double kQuadratureSlack = 1e-2;

double log_quadrature(const AdmixtureModel& model, std::span<const int> counts, double rel_tol) {
  const int k = model.k();
  if (k > 3) throw Unsupported("exact quadrature supports k <= 3; use the moment expansion");
  if (k == 1) {
    const double b[1] = {1.0};
    return log_integrand(model, counts, b);
  }
  const auto& g = model.mixing().gamma();
  // Scale by the largest log-integrand on a grid to keep exp() in range.
  double ref = kNegInf;
  const int grid = 16;
  for (int a = 0; a <= grid; ++a) {
    for (int b = 0; b <= (k == 3 ? grid - a : 0); ++b) {
      std::vector<double> beta(static_cast<std::size_t>(k));
      beta[0] = static_cast<double>(a) / grid;
      if (k == 2) {
        beta[1] = 1.0 - beta[0];
      } else {
        beta[1] = static_cast<double>(b) / grid;
        beta[2] = 1.0 - beta[0] - beta[1];
      }
      ref = std::max(ref, log_integrand(model, counts, beta));
    }
  }
  if (ref == kNegInf) return kNegInf;
  double error = 0.0, value = 0.0;
  if (k == 2) {
    value = integrate_unit(
        [&](double u, double uc) {
          const double beta[2] = {u, uc};
          return std::exp(log_beta_density(u, uc, g[0], g[1]) + log_integrand(model, counts, beta) - ref);
        },
        rel_tol * kQuadratureSlack, &error);
  } else {
    // Stick breaking: beta_1 = u ~ Beta(g1, g2 + g3), (beta_2, beta_3) = (1 - u)(v, 1 - v), v ~ Beta(g2, g3).
    bool inner_ok = true;
    value = integrate_unit(
        [&](double u, double uc) {
          double inner_err = 0.0;
          const double inner = integrate_unit(
              [&](double v, double vc) {
                const double beta[3] = {u, uc * v, uc * vc};
                return std::exp(log_beta_density(v, vc, g[1], g[2]) + log_integrand(model, counts, beta) - ref);
              },
              rel_tol * kQuadratureSlack * kQuadratureSlack, &inner_err);
          if (inner > 0.0 && inner_err > rel_tol * inner) inner_ok = false;
          return std::exp(log_beta_density(u, uc, g[0], g[1] + g[2])) * inner;
        },
        rel_tol * kQuadratureSlack, &error);
    if (!inner_ok) throw BudgetExceeded("marginal quadrature: inner integral missed its tolerance");
  }
  if (!(value > 0.0)) return kNegInf;
  if (error > rel_tol * value) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "marginal quadrature: relative error estimate %.3g exceeds %.3g", error / value,
                  rel_tol);
    throw BudgetExceeded(buf);
  }
  return std::log(value) + ref;
}

}  // namespace

MarginalResult marginal_loglik_counts(const AdmixtureModel& model, std::span<const int> counts,
                                      MarginalMethod method, const MarginalBudget& budget) {
  require(static_cast<int>(counts.size()) == model.d() + 1, "marginal_loglik: counts length must be d + 1");
  int n = 0;
  for (int c : counts) {
    require(c >= 0, "marginal_loglik: negative count");
    n += c;
  }
  if (n == 0) return {0.0, 0.0};
  switch (method) {
    case MarginalMethod::ExactQuadrature:
      return {log_quadrature(model, counts, budget.rel_tol), 0.0};
    case MarginalMethod::ExactMoment:
      return {log_moment(model, counts, budget.max_terms), 0.0};
    case MarginalMethod::MonteCarlo: {
      require(budget.samples >= 2, "marginal_loglik: Monte Carlo needs at least two samples");
      Rng rng(budget.seed);
      std::vector<double> logw(budget.samples);
      for (auto& lw : logw) {
        const auto beta = sample_beta(model.mixing(), rng);
        lw = log_integrand(model, counts, beta);
      }
      const double top = *std::max_element(logw.begin(), logw.end());
      if (top == kNegInf) return {kNegInf, 0.0};
      std::vector<double> w(logw.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(logw[i] - top);
      const double m1 = mean(w);
      const double se = std::sqrt(variance(w) / static_cast<double>(w.size())) / m1;
      return {top + std::log(m1), se};
    }
  }
  throw InvalidArgument("marginal_loglik: unknown method");
}

MarginalResult marginal_loglik(const AdmixtureModel& model, std::span<const std::uint8_t> row, MarginalMethod method,
                               const MarginalBudget& budget) {
  const auto counts = symbol_counts(row, model.d());
  return marginal_loglik_counts(model, counts, method, budget);
}

RegularityProbe regularity_probe(const AdmixtureModel& model, const Point& eta0, std::span<const double> eps_list,
                                 std::size_t samples, std::uint64_t seed) {
  require(eta0.size() == model.d() + 1, "regularity_probe: eta0 has the wrong dimension");
  require(samples >= 1, "regularity_probe: need at least one sample");
  for (double e : eps_list) require(e > 0.0, "regularity_probe: eps values must be positive");
  Rng rng(seed);
  std::vector<double> dist(samples);
  for (auto& r : dist) r = (sample_eta(model, rng) - eta0).norm();
  std::sort(dist.begin(), dist.end());
  RegularityProbe out;
  std::vector<double> xs, ys;
  const double n = static_cast<double>(samples);
  for (double e : eps_list) {
    const auto hits = static_cast<double>(std::upper_bound(dist.begin(), dist.end(), e) - dist.begin());
    const double p = hits / n;
    out.points.push_back({e, p, std::sqrt(p * (1.0 - p) / n)});
    if (p > 0.0) {
      xs.push_back(e);
      ys.push_back(p);
    }
  }
  bool distinct = false;
  for (double x : xs) distinct = distinct || x != xs.front();
  if (xs.size() >= 2 && distinct) out.exponent = log_log_fit(xs, ys).slope;
  return out;
}

}  // namespace admixtope
