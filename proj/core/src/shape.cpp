#include "admixtope/shape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "admixtope/error.hpp"
#include "admixtope/lp.hpp"
#include "admixtope/min_norm.hpp"

namespace admixtope {

namespace {

struct Ball {
  Eigen::VectorXd center;
  double radius = -1.0;
  bool contains(const Eigen::VectorXd& x) const {
    return radius >= 0.0 && (x - center).norm() <= radius * (1.0 + 1e-12) + 1e-14;
  }
};

Ball circumball(const std::vector<Eigen::VectorXd>& boundary, int dim) {
  Ball b;
  if (boundary.empty()) {
    b.center = Eigen::VectorXd::Zero(dim);
    return b;
  }
  const Eigen::VectorXd& r0 = boundary[0];
  if (boundary.size() == 1) {
    b.center = r0;
    b.radius = 0.0;
    return b;
  }
  const auto s = static_cast<Eigen::Index>(boundary.size() - 1);
  Eigen::MatrixXd e(dim, s);
  for (Eigen::Index i = 0; i < s; ++i) e.col(i) = boundary[static_cast<std::size_t>(i) + 1] - r0;
  const Eigen::MatrixXd m = 2.0 * e.transpose() * e;
  const Eigen::VectorXd rhs = e.colwise().squaredNorm().transpose();
  const Eigen::VectorXd lambda = m.completeOrthogonalDecomposition().solve(rhs);
  b.center = r0 + e * lambda;
  b.radius = 0.0;
  for (const auto& x : boundary) b.radius = std::max(b.radius, (x - b.center).norm());
  return b;
}

Ball welzl(std::vector<Eigen::VectorXd>& pts, std::size_t n, std::vector<Eigen::VectorXd>& boundary, int dim) {
  if (n == 0 || static_cast<int>(boundary.size()) == dim + 1) return circumball(boundary, dim);
  const Eigen::VectorXd p = pts[n - 1];
  Ball b = welzl(pts, n - 1, boundary, dim);
  if (b.contains(p)) return b;
  boundary.push_back(p);
  b = welzl(pts, n - 1, boundary, dim);
  boundary.pop_back();
  return b;
}

}  // namespace

ThicknessReport check_A1(const Polytope& g) {
  ThicknessReport out;
  const int p = g.affine_dim();
  const AffineFrame& frame = g.frame();
  if (p == 0) {
    out.center = g.generators()[g.extreme_indices().front()];
    out.meb_center = out.center;
    return out;
  }
  const FacetStructure fs = facet_structure(g);
  const auto nf = static_cast<Eigen::Index>(fs.facets.size());
  Eigen::MatrixXd a(nf, 2 * p + 1);
  Eigen::VectorXd b(nf);
  for (Eigen::Index f = 0; f < nf; ++f) {
    const Facet& facet = fs.facets[static_cast<std::size_t>(f)];
    a.block(f, 0, 1, p) = facet.normal.transpose();
    a.block(f, p, 1, p) = -facet.normal.transpose();
    a(f, 2 * p) = 1.0;
    b(f) = facet.offset;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * p + 1);
  c(2 * p) = 1.0;
  const lp::Solution sol = lp::maximize(a, b, c);
  if (sol.status != lp::Status::Optimal) throw InvariantViolation("check_A1: Chebyshev LP failed");
  const Eigen::VectorXd local_center = sol.x.head(p) - sol.x.segment(p, p);
  out.r_in = std::max(0.0, sol.x(2 * p));
  out.center = frame.to_ambient(local_center);
  for (const auto& v : fs.local_vertices) out.R_out = std::max(out.R_out, (v - local_center).norm());

  std::vector<Eigen::VectorXd> pts = fs.local_vertices;
  std::vector<Eigen::VectorXd> boundary;
  const Ball meb = welzl(pts, pts.size(), boundary, p);
  out.meb_center = frame.to_ambient(meb.center);
  out.meb_radius = meb.radius;
  return out;
}

CornerReport check_A2(const Polytope& g) {
  const int p = g.affine_dim();
  if (p > 3) throw Unsupported("check_A2: affine dimension > 3 is not supported");
  require(p >= 1, "check_A2: polytope is a single point");
  const FacetStructure fs = facet_structure(g);
  CornerReport out;
  out.delta_min = std::numbers::pi / 2;
  for (std::size_t v = 0; v < fs.local_vertices.size(); ++v) {
    const auto& nbrs = fs.adjacency[v];
    if (nbrs.empty()) throw InvariantViolation("check_A2: vertex without adjacent edges");
    Eigen::MatrixXd reversed(p, static_cast<Eigen::Index>(nbrs.size()));
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      reversed.col(static_cast<Eigen::Index>(i)) = -(fs.local_vertices[nbrs[i]] - fs.local_vertices[v]).normalized();
    // The unit normal n maximizing min_i angle(edge_i, hyperplane) is the
    // direction of the min-norm point of conv(-u_i); the sine of that angle is
    // its norm.
    const double sine = std::min(1.0, min_norm_point(reversed).distance);
    const double delta = std::asin(sine);
    out.vertex.push_back(g.extreme_indices()[v]);
    out.delta.push_back(delta);
    out.delta_min = std::min(out.delta_min, delta);
  }
  return out;
}

}  // namespace admixtope
