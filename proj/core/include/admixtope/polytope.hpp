#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace admixtope {

/// A point of the ambient space R^D. Points on the probability simplex carry
/// frequencies (nonnegative, summing to one).
using Point = Eigen::VectorXd;

/// Absolute tolerance for collinearity, rank and hull-membership decisions.
inline constexpr double kGeomTol = 1e-9;

/// Throws InvalidArgument unless `x` is finite, nonnegative and sums to one
/// within kGeomTol.
void validate_simplex_point(const Point& x);

/// Orthonormal coordinates for an affine subspace: x = origin + basis * y.
struct AffineFrame {
  Point origin;
  Eigen::MatrixXd basis;  ///< D x p, orthonormal columns

  int dim() const { return static_cast<int>(basis.cols()); }
  Eigen::VectorXd to_local(const Point& x) const { return basis.transpose() * (x - origin); }
  Point to_ambient(const Eigen::VectorXd& y) const { return origin + basis * y; }
  /// Distance from x to the affine subspace.
  double residual(const Point& x) const;
};

/// Affine span of a point set via SVD with singular-value cutoff kGeomTol.
AffineFrame affine_span(std::span<const Point> points);

/// Convex polytope given by generators, with its extreme points identified.
/// Immutable after construction; build through extreme_points().
class Polytope {
 public:
  const std::vector<Point>& generators() const { return generators_; }
  const std::vector<std::size_t>& extreme_indices() const { return extreme_idx_; }
  std::vector<Point> extreme_points() const;
  /// Extreme points as the columns of a D x |extr| matrix.
  const Eigen::MatrixXd& extreme_matrix() const { return extreme_matrix_; }
  std::size_t num_extreme() const { return extreme_idx_.size(); }
  int affine_dim() const { return frame_.dim(); }
  int ambient_dim() const { return static_cast<int>(generators_.front().size()); }
  bool on_simplex() const { return on_simplex_; }
  const AffineFrame& frame() const { return frame_; }

 private:
  friend Polytope extreme_points(std::vector<Point> points, bool on_simplex);
  Polytope() = default;

  std::vector<Point> generators_;
  std::vector<std::size_t> extreme_idx_;
  Eigen::MatrixXd extreme_matrix_;
  AffineFrame frame_;
  bool on_simplex_ = false;
};

/// Builds a polytope and its minimal extreme set: a generator is extreme iff
/// it is not within kGeomTol of the hull of the remaining distinct generators.
/// Repeated generators keep only their first occurrence.
/// Throws InvalidArgument on empty input, mismatched or non-finite coordinates,
/// or (when on_simplex) points off the simplex.
Polytope extreme_points(std::vector<Point> points, bool on_simplex = false);

/// Halfspace a.y <= b in the local coordinates of a polytope's affine frame,
/// with |a| = 1, together with the extreme points lying on it.
struct Facet {
  Eigen::VectorXd normal;
  double offset = 0.0;
  std::vector<std::size_t> incident;  ///< positions in extreme_indices()
};

/// Facet (H-)representation inside the affine span plus vertex adjacency.
struct FacetStructure {
  int dim = 0;
  std::vector<Eigen::VectorXd> local_vertices;  ///< extreme points in frame coords
  std::vector<Facet> facets;
  std::vector<std::vector<std::size_t>> adjacency;  ///< per extreme position

  /// Whether local point y lies in the polytope (facet slack `tol`).
  bool contains_local(const Eigen::VectorXd& y, double tol = kGeomTol) const;
};

/// Enumerates facets by testing every affinely independent p-subset of extreme
/// points as a supporting hyperplane. Exact for the small vertex counts used
/// here (|extr| <= ~16).
FacetStructure facet_structure(const Polytope& g);

/// Hull membership in ambient coordinates: within `tol` of the affine span and
/// inside every facet.
bool contains(const Polytope& g, const Point& x, double tol = 1e-8);

/// p-dimensional volume of the polytope inside its affine span.
double volume(const Polytope& g);

}  // namespace admixtope
