#pragma once

#include <vector>

#include "slopelab/space.hpp"

namespace slopelab {

/// Convex hull of finitely many points of R^n, stored by its vertices.
class Polytope {
 public:
  /// Reduces `points` to the vertices of their convex hull. Throws on an empty list.
  static Polytope hull(std::size_t dim, std::vector<Point> points);

  std::size_t dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }

  /// h(u) = max over vertices of <v, u>
  double support(ConstVec u) const;
  bool contains(ConstVec y, double tol = kExactTol) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Point> vertices_;
};

/// min of the support function over the unit sphere of `space` (the primal norm).
/// Positive exactly when 0 is interior; then it is the radius of the largest
/// dual-norm ball around 0 inside the polytope. Requires dim <= 3.
double interior_radius(const SpaceConfig& space, const Polytope& p);

}  // namespace slopelab
