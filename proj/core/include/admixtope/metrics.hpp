#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "admixtope/polytope.hpp"

namespace admixtope {

/// Euclidean distance from x to the hull of g (0 iff x lies in g).
double dist_point_polytope(const Point& x, const Polytope& g);

/// Hausdorff distance between hulls. The sup of a convex distance function over
/// a polytope is attained at an extreme point, so only extreme points of each
/// side are probed against the other hull.
double hausdorff(const Polytope& a, const Polytope& b);

/// Minimum-matching distance: the larger of the two directed max-min
/// vertex-to-vertex distances over extreme points. Permutation invariant.
double min_matching(const Polytope& a, const Polytope& b);

struct PackingResult {
  std::size_t packing = 0;    ///< greedy maximal eps-packing size
  std::size_t covering = 0;   ///< size of the pruned greedy eps-cover, <= packing
  std::vector<std::size_t> packing_members;
  std::vector<std::size_t> covering_centers;
};

/// Greedy first-fit packing over a finite candidate list: candidate i joins
/// when its Hausdorff distance to every member is >= eps. The covering count
/// starts from the packing (it covers the list at radius eps) and drops
/// centers, last first, while every candidate stays within eps of a center.
PackingResult packing_number(std::span<const Polytope> candidates, double eps, int threads = 1);

/// Pairwise Hausdorff matrix, computed in parallel with ordered output.
Eigen::MatrixXd hausdorff_matrix(std::span<const Polytope> candidates, int threads = 1);

}  // namespace admixtope
