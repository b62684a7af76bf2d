#include "admixtope/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "admixtope/error.hpp"

namespace admixtope {

double mean(std::span<const double> x) {
  require(!x.empty(), "mean: empty input");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double mu = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - mu) * (v - mu);
  return s / static_cast<double>(x.size() - 1);
}

double quantile(std::vector<double> x, double q) {
  require(!x.empty(), "quantile: empty input");
  require(q >= 0.0 && q <= 1.0, "quantile: q must lie in [0, 1]");
  std::sort(x.begin(), x.end());
  const double h = (static_cast<double>(x.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, "linear_fit: need two or more paired values");
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, "linear_fit: x values are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

LinearFit log_log_fit(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, "log_log_fit: values must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return linear_fit(lx, ly);
}

double split_rhat(const std::vector<std::vector<double>>& chains) {
  std::vector<std::span<const double>> halves;
  for (const auto& c : chains) {
    const std::size_t h = c.size() / 2;
    if (h < 2) return 1.0;
    halves.emplace_back(c.data(), h);
    halves.emplace_back(c.data() + c.size() - h, h);
  }
  if (halves.empty()) return 1.0;
  const std::size_t n = halves.front().size();
  for (const auto& h : halves)
    if (h.size() != n) throw InvalidArgument("split_rhat: chains must have equal length");
  std::vector<double> means;
  double w = 0.0;
  for (const auto& h : halves) {
    means.push_back(mean(h));
    w += variance(h);
  }
  w /= static_cast<double>(halves.size());
  const double b = static_cast<double>(n) * variance(means);
  if (w <= 0.0) return b <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  const double var_plus = (static_cast<double>(n) - 1.0) / static_cast<double>(n) * w + b / static_cast<double>(n);
  return std::sqrt(var_plus / w);
}

double log_sum_exp(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : x) s += std::exp(v - m);
  return m + std::log(s);
}

}  // namespace admixtope
