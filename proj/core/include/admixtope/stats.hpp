#pragma once

#include <span>
#include <vector>

namespace admixtope {

double mean(std::span<const double> x);
/// Unbiased sample variance (0 for fewer than two values).
double variance(std::span<const double> x);
/// Linear-interpolation quantile (type 7) of unsorted data.
double quantile(std::vector<double> x, double q);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
/// Ordinary least squares y ~ intercept + slope * x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);
/// Least squares on (log x, log y).
LinearFit log_log_fit(std::span<const double> x, std::span<const double> y);

/// Split potential scale reduction over chains of equal length (each chain is
/// halved). Returns 1 for chains too short to split.
double split_rhat(const std::vector<std::vector<double>>& chains);

/// log(sum exp(x)); -infinity for an empty or all -infinity input.
double log_sum_exp(std::span<const double> x);

}  // namespace admixtope
