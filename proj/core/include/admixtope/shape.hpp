#pragma once

#include <cstddef>
#include <vector>

#include "admixtope/polytope.hpp"

namespace admixtope {

/// Thick-body certificate: ball(center, r_in) inside the polytope within its
/// affine span, and every vertex within R_out of the same center.
struct ThicknessReport {
  Point center;        ///< Chebyshev center (ambient coordinates)
  double r_in = 0.0;   ///< Chebyshev radius inside the affine span
  double R_out = 0.0;  ///< max vertex distance from `center`
  Point meb_center;    ///< center of the minimum enclosing ball of the vertices
  double meb_radius = 0.0;

  bool passes_A1(double r_required, double R_required) const {
    return r_in >= r_required && R_out <= R_required;
  }
};

/// Inscribed radius by the max-inscribed-ball linear program over the facet
/// representation; enclosing radius measured from the same center. A single
/// point yields all-zero radii.
ThicknessReport check_A1(const Polytope& g);

/// Non-obtuse-corner certificate. For each extreme point the supporting
/// hyperplane is the one whose normal maximizes the smallest angle to the
/// adjacent edges; for polygons this is the bisector of the normal cone.
struct CornerReport {
  std::vector<std::size_t> vertex;  ///< generator index of each extreme point
  std::vector<double> delta;        ///< radians, in (0, pi/2]
  double delta_min = 0.0;
};

/// Throws Unsupported for affine dimension > 3 and InvalidArgument for a single point.
CornerReport check_A2(const Polytope& g);

}  // namespace admixtope
