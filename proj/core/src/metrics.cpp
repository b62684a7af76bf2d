#include "admixtope/metrics.hpp"

#include <algorithm>

#include "admixtope/error.hpp"
#include "admixtope/min_norm.hpp"
#include "admixtope/parallel.hpp"

namespace admixtope {

namespace {

double nearest_vertex(const Eigen::MatrixXd& vertices, const Eigen::VectorXd& x) {
  return (vertices.colwise() - x).colwise().norm().minCoeff();
}

// The nearest vertex bounds the hull distance; taking the minimum keeps
// dH <= dM exact despite rounding in the min-norm solve.
double hull_distance(const Eigen::MatrixXd& vertices, const Eigen::VectorXd& x) {
  return std::min(nearest_in_hull(vertices, x).distance, nearest_vertex(vertices, x));
}

double directed_hausdorff(const Polytope& from, const Polytope& to) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < from.extreme_matrix().cols(); ++i)
    worst = std::max(worst, hull_distance(to.extreme_matrix(), from.extreme_matrix().col(i)));
  return worst;
}

double directed_matching(const Eigen::MatrixXd& from, const Eigen::MatrixXd& to) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < from.cols(); ++i) {
    worst = std::max(worst, nearest_vertex(to, from.col(i)));
  }
  return worst;
}

}  // namespace

double dist_point_polytope(const Point& x, const Polytope& g) {
  require(g.num_extreme() > 0, "dist_point_polytope: empty polytope");
  require(x.size() == g.ambient_dim(), "dist_point_polytope: dimension mismatch");
  return hull_distance(g.extreme_matrix(), x);
}

double hausdorff(const Polytope& a, const Polytope& b) {
  require(a.num_extreme() > 0 && b.num_extreme() > 0, "hausdorff: empty polytope");
  require(a.ambient_dim() == b.ambient_dim(), "hausdorff: dimension mismatch");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double min_matching(const Polytope& a, const Polytope& b) {
  require(a.num_extreme() > 0 && b.num_extreme() > 0, "min_matching: empty extreme set");
  require(a.ambient_dim() == b.ambient_dim(), "min_matching: dimension mismatch");
  return std::max(directed_matching(a.extreme_matrix(), b.extreme_matrix()),
                  directed_matching(b.extreme_matrix(), a.extreme_matrix()));
}

Eigen::MatrixXd hausdorff_matrix(std::span<const Polytope> candidates, int threads) {
  const std::size_t n = candidates.size();
  const auto rows = parallel_map(n, threads, [&](std::size_t i) {
    std::vector<double> row(n, 0.0);
    for (std::size_t j = i + 1; j < n; ++j) row[j] = hausdorff(candidates[i], candidates[j]);
    return row;
  });
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = rows[i][j];
    }
  return d;
}

PackingResult packing_number(std::span<const Polytope> candidates, double eps, int threads) {
  require(eps > 0.0, "packing_number: eps must be positive");
  PackingResult out;
  if (candidates.empty()) return out;
  const Eigen::MatrixXd d = hausdorff_matrix(candidates, threads);
  const auto n = static_cast<Eigen::Index>(candidates.size());
  auto dist = [&](std::size_t i, std::size_t j) {
    return d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };

  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const bool far = std::all_of(out.packing_members.begin(), out.packing_members.end(),
                                 [&](std::size_t j) { return dist(ui, j) >= eps; });
    if (far) out.packing_members.push_back(ui);
  }
  out.packing = out.packing_members.size();

  std::vector<std::size_t> centers = out.packing_members;
  auto covered_without = [&](std::size_t drop) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      bool ok = false;
      for (std::size_t c : centers)
        if (c != drop && dist(ui, c) <= eps) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  };
  for (std::size_t pos = centers.size(); pos-- > 0;) {
    if (centers.size() > 1 && covered_without(centers[pos])) centers.erase(centers.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  out.covering_centers = centers;
  out.covering = centers.size();
  return out;
}

}  // namespace admixtope
