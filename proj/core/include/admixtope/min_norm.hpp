#pragma once

#include <Eigen/Dense>

namespace admixtope {

struct NearestPoint {
  Eigen::VectorXd point;    ///< nearest point of the hull, ambient coordinates
  Eigen::VectorXd weights;  ///< barycentric weights over the input columns
  double distance = 0.0;
  double gap = 0.0;  ///< Frank-Wolfe duality gap on the squared distance at exit
};

/// Euclidean projection of `x` onto conv(columns of `points`), computed with
/// Wolfe's minimum-norm-point algorithm. Terminates when the duality gap on
/// the squared distance falls below ~1e-14 (relative to the point scale).
NearestPoint nearest_in_hull(const Eigen::MatrixXd& points, const Eigen::VectorXd& x);

/// Minimum-norm point of conv(columns of `points`).
NearestPoint min_norm_point(const Eigen::MatrixXd& points);

}  // namespace admixtope
