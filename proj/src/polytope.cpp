#include "slopelab/polytope.hpp"

#include <algorithm>

#include "slopelab/errors.hpp"
#include "slopelab/lp.hpp"
#include "slopelab/sphere.hpp"

namespace slopelab {

Polytope Polytope::hull(std::size_t dim, std::vector<Point> points) {
  if (points.empty()) fail(ErrorCode::kInvalidArgument, "polytope needs at least one point");
  for (const auto& p : points)
    if (p.size() != dim) fail(ErrorCode::kDimensionMismatch, "polytope point has the wrong dimension");

  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Point& a, const Point& b) {
                             for (std::size_t i = 0; i < a.size(); ++i)
                               if (std::abs(a[i] - b[i]) > 1e-12) return false;
                             return true;
                           }),
               points.end());

  Polytope out;
  out.dim_ = dim;
  if (dim == 1) {
    out.vertices_.push_back(points.front());
    if (points.back()[0] > points.front()[0]) out.vertices_.push_back(points.back());
    return out;
  }
  // A point is redundant when it lies in the hull of the points kept or not yet examined.
  std::vector<bool> keep(points.size(), true);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<Point> others;
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i && keep[j]) others.push_back(points[j]);
    if (!others.empty() && lp::in_convex_hull(others, points[i], 1e-10)) keep[i] = false;
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    if (keep[i]) out.vertices_.push_back(points[i]);
  return out;
}

double Polytope::support(ConstVec u) const {
  double m = -kInf;
  for (const auto& v : vertices_) m = std::max(m, dot(v, u));
  return m;
}

bool Polytope::contains(ConstVec y, double tol) const {
  if (y.size() != dim_) fail(ErrorCode::kDimensionMismatch, "point dimension does not match polytope");
  if (dim_ == 1) {
    const double lo = vertices_.front()[0], hi = vertices_.back()[0];
    return y[0] >= lo - tol && y[0] <= hi + tol;
  }
  return lp::in_convex_hull(vertices_, Point(y.begin(), y.end()), tol);
}

double interior_radius(const SpaceConfig& space, const Polytope& p) {
  if (p.vertices().empty()) fail(ErrorCode::kInvalidArgument, "empty polytope");
  if (space.dim != p.dim()) fail(ErrorCode::kDimensionMismatch, "polytope and space dimensions differ");
  return sphere::minimize_max_linear(space, p.vertices()).value;
}

}  // namespace slopelab
