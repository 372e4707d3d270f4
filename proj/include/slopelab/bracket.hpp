#pragma once

#include <string>
#include <vector>

#include "slopelab/space.hpp"

namespace slopelab {

struct LevelDiagnostic {
  double radius = 0.0;
  double sampled_inf = kInf;   // inf of the sampled quotient over the level
  double sampled_sup = -kInf;  // sup of the sampled quotient over the level
  std::size_t samples = 0;
};

/// Two-sided estimate of a rate functional. Exact paths set certified and lower == upper.
struct RateBracket {
  ExtReal lower = ExtReal::minus_inf();
  ExtReal upper = ExtReal::plus_inf();
  bool certified = false;
  std::string branch;  // which path or definition branch produced the value
  std::vector<LevelDiagnostic> diagnostics;

  static RateBracket exact(double v, std::string branch) {
    RateBracket b;
    b.lower = b.upper = ExtReal(v);
    b.certified = true;
    b.branch = std::move(branch);
    return b;
  }
  bool contains(double v, double tol = 0.0) const {
    return lower.value() <= v + tol && v - tol <= upper.value();
  }
  /// Point value for reporting: the finite endpoint closest to the middle.
  double midpoint() const;
};

}  // namespace slopelab
