#include "admixtope/min_norm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "admixtope/error.hpp"

namespace admixtope {

namespace {

// Minimizer of ||y|| over the affine hull of the corral columns, returned as
// affine weights summing to one.
Eigen::VectorXd affine_minimizer(const Eigen::MatrixXd& q, const std::vector<int>& corral) {
  const int s = static_cast<int>(corral.size());
  Eigen::VectorXd alpha(s);
  if (s == 1) {
    alpha(0) = 1.0;
    return alpha;
  }
  const Eigen::VectorXd base = q.col(corral[0]);
  Eigen::MatrixXd e(q.rows(), s - 1);
  for (int i = 1; i < s; ++i) e.col(i - 1) = q.col(corral[i]) - base;
  const Eigen::VectorXd t = e.completeOrthogonalDecomposition().solve(-base);
  alpha(0) = 1.0 - t.sum();
  alpha.tail(s - 1) = t;
  return alpha;
}

}  // namespace

NearestPoint min_norm_point(const Eigen::MatrixXd& points) {
  const int k = static_cast<int>(points.cols());
  require(k > 0, "min_norm_point: empty point set");
  double scale = 1.0;
  for (int i = 0; i < k; ++i) scale = std::max(scale, points.col(i).squaredNorm());
  const double gap_tol = 1e-15 * scale;
  const double weight_tol = 1e-15;

  int start = 0;
  for (int i = 1; i < k; ++i)
    if (points.col(i).squaredNorm() < points.col(start).squaredNorm()) start = i;

  std::vector<int> corral{start};
  std::vector<double> w{1.0};
  Eigen::VectorXd y = points.col(start);
  double gap = 0.0;

  const int max_major = 1000 + 100 * k;
  for (int major = 0; major < max_major; ++major) {
    const Eigen::VectorXd g = points.transpose() * y;
    int j = 0;
    for (int i = 1; i < k; ++i)
      if (g(i) < g(j)) j = i;
    gap = y.squaredNorm() - g(j);
    if (gap <= gap_tol) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
    corral.push_back(j);
    w.push_back(0.0);

    for (int minor = 0; minor <= k + 1; ++minor) {
      const Eigen::VectorXd alpha = affine_minimizer(points, corral);
      if (alpha.minCoeff() > weight_tol) {
        for (std::size_t i = 0; i < corral.size(); ++i) w[i] = alpha(static_cast<int>(i));
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        const double a = alpha(static_cast<int>(i));
        if (a <= weight_tol && w[i] - a > 0.0) theta = std::min(theta, w[i] / (w[i] - a));
      }
      for (std::size_t i = 0; i < corral.size(); ++i)
        w[i] = theta * alpha(static_cast<int>(i)) + (1.0 - theta) * w[i];
      std::vector<int> kept_idx;
      std::vector<double> kept_w;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (w[i] > weight_tol) {
          kept_idx.push_back(corral[i]);
          kept_w.push_back(w[i]);
        }
      }
      if (kept_idx.empty()) {
        kept_idx.push_back(corral.back());
        kept_w.push_back(1.0);
      }
      corral = std::move(kept_idx);
      w = std::move(kept_w);
    }
    double total = 0.0;
    for (double v : w) total += v;
    y.setZero();
    for (std::size_t i = 0; i < corral.size(); ++i) {
      w[i] /= total;
      y += w[i] * points.col(corral[i]);
    }
  }

  NearestPoint out;
  out.weights = Eigen::VectorXd::Zero(k);
  for (std::size_t i = 0; i < corral.size(); ++i) out.weights(corral[i]) = w[i];
  out.point = y;
  out.distance = y.norm();
  out.gap = std::max(0.0, gap);
  return out;
}

NearestPoint nearest_in_hull(const Eigen::MatrixXd& points, const Eigen::VectorXd& x) {
  require(points.rows() == x.size(), "nearest_in_hull: dimension mismatch");
  const Eigen::MatrixXd shifted = points.colwise() - x;
  NearestPoint out = min_norm_point(shifted);
  out.point = points * out.weights;
  return out;
}

}  // namespace admixtope
