#pragma once

#include <cstddef>

#include "admixtope/polytope.hpp"

namespace admixtope {

/// Cuts the corner at extreme position `vertex` (an index into
/// extreme_indices()): the vertex is replaced by the points at distance eps
/// from it along each adjacent edge. The result is contained in g.
/// Throws InvalidArgument unless 0 < eps < shortest adjacent edge.
Polytope eps_cap_chop(const Polytope& g, std::size_t vertex, double eps);

/// Scales g about its Chebyshev center by 1 + eps / r_in, which contains the
/// eps-enlargement of g within its affine span.
/// Throws InvalidArgument when g has no interior (r_in ~ 0) or eps < 0.
Polytope homothety_enlarge(const Polytope& g, double eps);

/// Scale factor used by homothety_enlarge.
double homothety_factor(const Polytope& g, double eps);

/// Copy of g with extreme position `vertex` moved by `shift`.
Polytope displace_vertex(const Polytope& g, std::size_t vertex, const Point& shift);

/// The lower-bound pair: a base polytope and its eps-capped copy, both with at
/// most k extreme points inside the simplex of dimension d.
struct MinimaxPair {
  Polytope base;
  Polytope chopped;
  int q = 0;                  ///< affine dimension of the pair
  bool simplex_case = true;   ///< false: d-polytope with k - d + 1 vertices
  std::size_t chopped_vertex = 0;
};

/// For floor(k/2) <= d the base is a regular floor(k/2)-simplex; otherwise a
/// d-polytope with k - d + 1 vertices whose chopped vertex has exactly d
/// neighbours. With d = 1 only the segment case exists.
/// Throws InvalidArgument for k < 2, d < 1 or eps too large.
MinimaxPair minimax_pair(int k, int d, double eps);

}  // namespace admixtope
