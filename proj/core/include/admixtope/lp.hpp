#pragma once

#include <Eigen/Dense>

namespace admixtope::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
};

/// Dense two-phase simplex for
///   maximize c'x  subject to  A x <= b,  x >= 0.
/// Intended for the small programs that arise here (Chebyshev centers,
/// hull-membership feasibility); no sparsity is exploited.
Solution maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace admixtope::lp
