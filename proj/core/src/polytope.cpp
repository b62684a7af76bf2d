#include "admixtope/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "admixtope/error.hpp"
#include "admixtope/min_norm.hpp"

namespace admixtope {

void validate_simplex_point(const Point& x) {
  require(x.size() > 0, "simplex point must be nonempty");
  require(x.allFinite(), "simplex point has non-finite entries");
  require(x.minCoeff() >= -kGeomTol, "simplex point has a negative entry");
  require(std::abs(x.sum() - 1.0) <= kGeomTol, "simplex point does not sum to one");
}

double AffineFrame::residual(const Point& x) const {
  const Eigen::VectorXd d = x - origin;
  return (d - basis * (basis.transpose() * d)).norm();
}

AffineFrame affine_span(std::span<const Point> points) {
  require(!points.empty(), "affine_span: empty point set");
  const auto dim = points.front().size();
  AffineFrame frame;
  frame.origin = Point::Zero(dim);
  for (const Point& p : points) frame.origin += p;
  frame.origin /= static_cast<double>(points.size());
  Eigen::MatrixXd diffs(dim, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    diffs.col(static_cast<Eigen::Index>(i)) = points[i] - frame.origin;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > kGeomTol) ++rank;
  frame.basis = svd.matrixU().leftCols(rank);
  return frame;
}

std::vector<Point> Polytope::extreme_points() const {
  std::vector<Point> out;
  out.reserve(extreme_idx_.size());
  for (std::size_t i : extreme_idx_) out.push_back(generators_[i]);
  return out;
}

Polytope extreme_points(std::vector<Point> points, bool on_simplex) {
  require(!points.empty(), "extreme_points: empty input");
  const auto dim = points.front().size();
  require(dim > 0, "extreme_points: zero-dimensional points");
  for (const Point& p : points) {
    require(p.size() == dim, "extreme_points: dimension mismatch");
    require(p.allFinite(), "extreme_points: non-finite coordinates");
    if (on_simplex) validate_simplex_point(p);
  }

  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const bool repeat = std::any_of(distinct.begin(), distinct.end(), [&](std::size_t j) {
      return (points[i] - points[j]).norm() <= kGeomTol;
    });
    if (!repeat) distinct.push_back(i);
  }

  Polytope g;
  g.on_simplex_ = on_simplex;
  if (distinct.size() == 1) {
    g.extreme_idx_ = distinct;
  } else {
    Eigen::MatrixXd others(dim, static_cast<Eigen::Index>(distinct.size() - 1));
    for (std::size_t a = 0; a < distinct.size(); ++a) {
      Eigen::Index col = 0;
      for (std::size_t b = 0; b < distinct.size(); ++b)
        if (b != a) others.col(col++) = points[distinct[b]];
      if (nearest_in_hull(others, points[distinct[a]]).distance > kGeomTol)
        g.extreme_idx_.push_back(distinct[a]);
    }
  }
  g.generators_ = std::move(points);
  g.extreme_matrix_.resize(dim, static_cast<Eigen::Index>(g.extreme_idx_.size()));
  for (std::size_t i = 0; i < g.extreme_idx_.size(); ++i)
    g.extreme_matrix_.col(static_cast<Eigen::Index>(i)) = g.generators_[g.extreme_idx_[i]];
  const auto extremes = g.extreme_points();
  g.frame_ = affine_span(extremes);
  return g;
}

bool FacetStructure::contains_local(const Eigen::VectorXd& y, double tol) const {
  if (dim == 0) return y.size() == 0 || y.norm() <= tol;
  return std::all_of(facets.begin(), facets.end(),
                     [&](const Facet& f) { return f.normal.dot(y) <= f.offset + tol; });
}

namespace {

// Calls fn on every size-r subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t r, F&& fn) {
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    fn(idx);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

FacetStructure facets_of_local(std::vector<Eigen::VectorXd> verts, int p) {
  FacetStructure fs;
  fs.dim = p;
  fs.local_vertices = std::move(verts);
  const auto& v = fs.local_vertices;
  const std::size_t nv = v.size();
  fs.adjacency.assign(nv, {});
  if (p == 0) return fs;

  double scale = 0.0;
  for (const auto& x : v) scale = std::max(scale, x.norm());
  const double tol = kGeomTol * std::max(1.0, scale);

  for_each_subset(nv, static_cast<std::size_t>(p), [&](const std::vector<std::size_t>& s) {
    Eigen::VectorXd normal;
    if (p == 1) {
      normal = Eigen::VectorXd::Ones(1);
    } else {
      Eigen::MatrixXd e(p - 1, p);
      for (int i = 1; i < p; ++i) e.row(i - 1) = (v[s[i]] - v[s[0]]).transpose();
      Eigen::FullPivLU<Eigen::MatrixXd> lu(e);
      lu.setThreshold(1e-10);
      if (lu.rank() != p - 1) return;
      const Eigen::MatrixXd ker = lu.kernel();
      if (ker.cols() != 1) return;
      normal = ker.col(0).normalized();
    }
    double offset = normal.dot(v[s[0]]);
    double lo = 0.0, hi = 0.0;
    for (const auto& x : v) {
      const double t = normal.dot(x) - offset;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    if (lo < -tol && hi > tol) return;
    if (hi > tol) {
      normal = -normal;
      offset = -offset;
    }
    const bool seen = std::any_of(fs.facets.begin(), fs.facets.end(), [&](const Facet& f) {
      return (f.normal - normal).norm() <= 1e-7 && std::abs(f.offset - offset) <= 1e-7;
    });
    if (seen) return;
    Facet f{normal, offset, {}};
    for (std::size_t i = 0; i < nv; ++i)
      if (std::abs(normal.dot(v[i]) - offset) <= tol) f.incident.push_back(i);
    fs.facets.push_back(std::move(f));
  });

  // Two vertices span an edge iff the normals of the facets containing both
  // have rank p - 1.
  for (std::size_t a = 0; a < nv; ++a) {
    for (std::size_t b = a + 1; b < nv; ++b) {
      if (p == 1) {
        fs.adjacency[a].push_back(b);
        fs.adjacency[b].push_back(a);
        continue;
      }
      std::vector<Eigen::VectorXd> common;
      for (const Facet& f : fs.facets) {
        const bool has_a = std::find(f.incident.begin(), f.incident.end(), a) != f.incident.end();
        const bool has_b = std::find(f.incident.begin(), f.incident.end(), b) != f.incident.end();
        if (has_a && has_b) common.push_back(f.normal);
      }
      if (static_cast<int>(common.size()) < p - 1) continue;
      Eigen::MatrixXd n(p, static_cast<Eigen::Index>(common.size()));
      for (std::size_t i = 0; i < common.size(); ++i) n.col(static_cast<Eigen::Index>(i)) = common[i];
      Eigen::FullPivLU<Eigen::MatrixXd> lu(n);
      lu.setThreshold(1e-9);
      if (lu.rank() == p - 1) {
        fs.adjacency[a].push_back(b);
        fs.adjacency[b].push_back(a);
      }
    }
  }
  return fs;
}

double volume_local(const std::vector<Eigen::VectorXd>& verts, int p) {
  if (p == 0) return 1.0;
  if (verts.size() <= static_cast<std::size_t>(p)) return 0.0;
  if (p == 1) {
    double lo = verts[0](0), hi = verts[0](0);
    for (const auto& x : verts) {
      lo = std::min(lo, x(0));
      hi = std::max(hi, x(0));
    }
    return hi - lo;
  }
  const FacetStructure fs = facets_of_local(verts, p);
  Eigen::VectorXd center = Eigen::VectorXd::Zero(p);
  for (const auto& x : verts) center += x;
  center /= static_cast<double>(verts.size());
  double total = 0.0;
  for (const Facet& f : fs.facets) {
    const double height = f.offset - f.normal.dot(center);
    // Facet coordinates: orthonormal basis of the hyperplane normal to f.normal.
    Eigen::MatrixXd full = Eigen::MatrixXd::Identity(p, p);
    full.col(0) = f.normal;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(full);
    const Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd tangent = q.rightCols(p - 1);
    std::vector<Eigen::VectorXd> sub;
    for (std::size_t i : f.incident) sub.push_back(tangent.transpose() * verts[i]);
    total += height * volume_local(sub, p - 1) / p;
  }
  return total;
}

}  // namespace

FacetStructure facet_structure(const Polytope& g) {
  std::vector<Eigen::VectorXd> local;
  for (std::size_t i : g.extreme_indices()) local.push_back(g.frame().to_local(g.generators()[i]));
  return facets_of_local(std::move(local), g.affine_dim());
}

bool contains(const Polytope& g, const Point& x, double tol) {
  require(x.size() == g.ambient_dim(), "contains: dimension mismatch");
  if (g.frame().residual(x) > tol) return false;
  return facet_structure(g).contains_local(g.frame().to_local(x), tol);
}

double volume(const Polytope& g) {
  std::vector<Eigen::VectorXd> local;
  for (std::size_t i : g.extreme_indices()) local.push_back(g.frame().to_local(g.generators()[i]));
  return volume_local(local, g.affine_dim());
}

}  // namespace admixtope
