#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "slopelab/space.hpp"

namespace slopelab::sphere {

/// Sampling directions, unit in the configured norm: {+1, -1} in R^1, equispaced
/// angles in R^2, a Fibonacci lattice in R^3, seeded Gaussian directions above.
std::vector<Point> sample_directions(const SpaceConfig& space, std::size_t count, std::uint64_t seed);

/// Bound on max_u min_j ||u - u_j|| for sample_directions(space, count, .);
/// +inf in dimensions where no covering bound is known.
double covering_radius(const SpaceConfig& space, std::size_t count);

struct Minimum {
  double value = kInf;
  Point argmin;
};

/// min over the unit sphere of the configured norm. Angular mesh (720 points in
/// R^2, level-5 icosphere in R^3) followed by golden-section refinement of the
/// best mesh-local minima. Throws kUnsupported for dim > 3.
Minimum minimize(const SpaceConfig& space, const std::function<double(ConstVec)>& g);

/// Exact min over the unit sphere of u -> max_i <grads_i, u>, by enumerating the finitely
/// many directions where the minimum can sit (dim <= 3).
Minimum minimize_max_linear(const SpaceConfig& space, const std::vector<Point>& grads);

/// Local minimization of g over the directions within `half_angle` (radians,
/// euclidean) of `center`; nested golden-section search in a tangent frame.
Minimum refine(const SpaceConfig& space, const std::function<double(ConstVec)>& g, ConstVec center,
               double half_angle);

/// Vertices of the level-`level` icosphere (euclidean unit vectors).
const std::vector<Point>& icosphere(int level);

/// Golden-section search for a minimizer of a unimodal function on [a, b].
double golden_section(const std::function<double(double)>& f, double a, double b, double tol, double* argmin);

}  // namespace slopelab::sphere
