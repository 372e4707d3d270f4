#pragma once

#include <functional>

#include "slopelab/function.hpp"
#include "slopelab/report.hpp"

namespace slopelab::detail {

struct MinimalityVerdict {
  Tri verdict = Tri::kUndecided;
  bool certified = false;
  Point witness;  // a point with a strictly smaller value when verdict == kOut
};

/// Is xbar a local minimizer of h? Exact for polyhedral h in dim <= 3, else a
/// search over shells of radius 1e-2 .. 1e-6.
MinimalityVerdict local_minimality(const FunctionSpec& h, ConstVec xbar);

/// Points of the uniform grid on the box center +- half (per_dim points per axis).
void for_each_box_point(ConstVec center, double half, std::size_t per_dim, const std::function<void(ConstVec)>& visit);

std::size_t default_grid_points(std::size_t dim);

/// Normalizes w to unit length in the space norm.
Point unit(const SpaceConfig& space, Point w);

}  // namespace slopelab::detail
