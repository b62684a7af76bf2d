#include "admixtope/rates.hpp"

#include <algorithm>
#include <cmath>

#include "admixtope/error.hpp"

namespace admixtope {

RateResult rate_formula(double m, double n, int k, int d, double alpha, RateVariant variant) {
  require(m >= 2.0 && n >= 2.0, "rate_formula: m and n must be at least 2");
  require(k >= 1 && d >= 1, "rate_formula: k and d must be positive");
  require(alpha >= 0.0, "rate_formula: alpha must be nonnegative");
  RateResult r;
  r.p = std::min(k - 1, d);
  r.base = std::log(m) / m + std::log(n) / n + std::log(n) / m;
  const double dim = variant == RateVariant::Overfitted ? r.p + alpha : 1.0 + alpha;
  require(dim > 0.0, "rate_formula: p + alpha must be positive");
  r.exponent = 1.0 / (2.0 * dim);
  r.delta = std::pow(r.base, r.exponent);
  r.log_m_below_n = std::log(m) < n;
  r.log_n_small_vs_m = std::log(n) <= m / 10.0;
  r.loglog_m_below_log_n = std::log(std::log(m)) <= std::log(n);
  return r;
}

}  // namespace admixtope
