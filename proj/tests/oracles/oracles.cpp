#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "admixtope/lp.hpp"

namespace admixtope::oracle {

bool lp_contains(const Polytope& g, const Point& x, double tol) {
  const Eigen::MatrixXd& V = g.extreme_matrix();
  const auto D = V.rows();
  const auto k = V.cols();
  // V w <= x + tol, -V w <= -x + tol, 1'w <= 1, -1'w <= -1, w >= 0.
  Eigen::MatrixXd A(2 * D + 2, k);
  Eigen::VectorXd b(2 * D + 2);
  A.topRows(D) = V;
  A.middleRows(D, D) = -V;
  A.row(2 * D).setOnes();
  A.row(2 * D + 1).setConstant(-1.0);
  b.head(D) = x.array() + tol;
  b.segment(D, D) = -x.array() + tol;
  b(2 * D) = 1.0;
  b(2 * D + 1) = -1.0;
  return lp::maximize(A, b, Eigen::VectorXd::Zero(k)).status == lp::Status::Optimal;
}

std::vector<Point> segment_samples(const Polytope& g, int per_segment) {
  const auto pts = g.extreme_points();
  std::vector<Point> out(pts.begin(), pts.end());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (int s = 1; s < per_segment; ++s) {
        const double t = static_cast<double>(s) / per_segment;
        out.push_back((1.0 - t) * pts[i] + t * pts[j]);
      }
  return out;
}

std::vector<Point> hull_samples(const Polytope& g, std::size_t count, Rng& rng) {
  const auto pts = g.extreme_points();
  const std::vector<double> ones(pts.size(), 1.0);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const auto w = rng.dirichlet(ones);
    Point x = Point::Zero(pts.front().size());
    for (std::size_t i = 0; i < pts.size(); ++i) x += w[i] * pts[i];
    out.push_back(x);
  }
  return out;
}

double dense_distance(const Point& x, const Polytope& g, const std::vector<Point>& boundary) {
  if (lp_contains(g, x)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : boundary) best = std::min(best, (x - s).norm());
  return best;
}

double dense_hausdorff(const Polytope& a, const Polytope& b, int per_segment) {
  const auto sa = segment_samples(a, per_segment);
  const auto sb = segment_samples(b, per_segment);
  double h = 0.0;
  for (const auto& x : sa) h = std::max(h, dense_distance(x, b, sb));
  for (const auto& y : sb) h = std::max(h, dense_distance(y, a, sa));
  return h;
}

namespace {

// min over maps from every point of `from` into `to` of the largest step,
// by odometer enumeration of all maps.
double best_map(const std::vector<Point>& from, const std::vector<Point>& to) {
  std::vector<std::size_t> f(from.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) worst = std::max(worst, (from[i] - to[f[i]]).norm());
    best = std::min(best, worst);
    std::size_t pos = 0;
    while (pos < f.size() && ++f[pos] == to.size()) f[pos++] = 0;
    if (pos == f.size()) break;
  }
  return best;
}

}  // namespace

double brute_force_min_matching(const Polytope& a, const Polytope& b) {
  const auto pa = a.extreme_points();
  const auto pb = b.extreme_points();
  return std::max(best_map(pa, pb), best_map(pb, pa));
}

std::size_t exhaustive_packing(const std::vector<std::vector<double>>& dist, double eps) {
  const std::size_t n = dist.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (mask >> i & 1)
        for (std::size_t j = i + 1; j < n && ok; ++j)
          if ((mask >> j & 1) && dist[i][j] < eps) ok = false;
    if (ok) best = size;
  }
  return best;
}

std::vector<double> polygon_corner_deltas(const Polytope& g) {
  // Order the extreme points by angle in the frame to recover the edges.
  const auto pts = g.extreme_points();
  std::vector<Eigen::VectorXd> local;
  for (const auto& p : pts) local.push_back(g.frame().to_local(p));
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2);
  for (const auto& y : local) c += y / static_cast<double>(local.size());
  std::vector<std::size_t> order(local.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::atan2(local[i](1) - c(1), local[i](0) - c(0)) < std::atan2(local[j](1) - c(1), local[j](0) - c(0));
  });
  std::vector<double> delta(local.size());
  const std::size_t n = order.size();
  for (std::size_t r = 0; r < n; ++r) {
    const auto& v = local[order[r]];
    const Eigen::VectorXd e1 = (local[order[(r + 1) % n]] - v).normalized();
    const Eigen::VectorXd e2 = (local[order[(r + n - 1) % n]] - v).normalized();
    const double interior = std::acos(std::clamp(e1.dot(e2), -1.0, 1.0));
    delta[order[r]] = 0.5 * (std::numbers::pi - interior);
  }
  return delta;
}

}  // namespace admixtope::oracle
