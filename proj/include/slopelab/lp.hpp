#pragma once

#include <vector>

namespace slopelab::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

/// Dense two-phase simplex (Bland's rule) for
///   minimize c^T x  subject to  A x = b, x >= 0.
/// Intended for the tiny problems that arise here (tens of rows and columns).
Result solve_standard_form(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                           const std::vector<double>& c, double tol = 1e-11);

/// Is y a convex combination of the given points (within tol)?
bool in_convex_hull(const std::vector<std::vector<double>>& points, const std::vector<double>& y,
                    double tol = 1e-9);

/// inf over x in R^n of max_i (<g_i, x> + e_i); -inf when unbounded below.
double min_of_max_affine(const std::vector<std::vector<double>>& g, const std::vector<double>& e);

}  // namespace slopelab::lp
