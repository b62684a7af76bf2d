#pragma once

namespace admixtope {

enum class RateVariant { Overfitted, Parametric };

struct RateResult {
  double delta = 0.0;
  double base = 0.0;       ///< log m / m + log n / n + log n / m
  double exponent = 0.0;   ///< 1 / (2 (p + alpha)) or 1 / (2 (1 + alpha))
  int p = 0;               ///< (k - 1) min d
  bool log_m_below_n = false;        ///< log m < n
  bool log_n_small_vs_m = false;     ///< log n <= m / 10, proxy for log n = o(m)
  bool loglog_m_below_log_n = false; ///< log log m <= log n
};

/// Contraction rate delta_{m,n}. Throws InvalidArgument for m or n < 2,
/// k < 1, d < 1 or alpha < 0.
RateResult rate_formula(double m, double n, int k, int d, double alpha, RateVariant variant);

/// Scalars of a rate instance carried into reports.
struct RateSpec {
  double m = 0.0;
  double n = 0.0;
  int p = 0;
  double alpha = 0.0;
  double C = 1.0;
  double M_m = 0.0;
  double eps_mn = 0.0;
};

}  // namespace admixtope
