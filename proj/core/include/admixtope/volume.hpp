#pragma once

#include <cstddef>
#include <cstdint>

#include "admixtope/polytope.hpp"

namespace admixtope {

enum class VolumeMethod { Exact2d, MonteCarlo };

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;  ///< 0 for the exact method
};

/// True when both polytopes have the same affine dimension and their union
/// does not span a larger affine subspace.
bool same_affine_span(const Polytope& a, const Polytope& b);

/// p-dimensional volume of (a \ b) u (b \ a) inside the common affine span.
/// Exact2d clips the two convex polygons (p must be 2); MonteCarlo uses
/// hit-or-miss sampling in the common bounding box.
/// Throws InvalidArgument when the affine spans differ.
VolumeEstimate sym_diff_volume(const Polytope& a, const Polytope& b, VolumeMethod method,
                               std::size_t samples = 1'000'000, std::uint64_t seed = 0x5eed);

}  // namespace admixtope
