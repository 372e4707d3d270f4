#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slopelab {

using Point = std::vector<double>;
using ConstVec = std::span<const double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Default absolute tolerance of every exact polyhedral computation.
inline constexpr double kExactTol = 1e-9;

enum class Norm { kEuclidean, kEll1, kEllInf };

std::string_view norm_name(Norm norm);
Norm parse_norm(std::string_view name);

struct SpaceConfig {
  std::size_t dim = 1;
  Norm norm = Norm::kEuclidean;

  double norm_of(ConstVec v) const;
  /// Norm of the dual space: l2 <-> l2, l1 <-> linf.
  double dual_norm_of(ConstVec v) const;
  double distance(ConstVec x, ConstVec y) const;
  /// Vector x* with dual norm 1 and <x*, v> = ||v||; zero when v = 0.
  Point dual_norming_vector(ConstVec v) const;
  /// Constant c with ||v|| <= c * ||v||_2 divided by the matching lower constant,
  /// used to convert euclidean covering radii into the configured norm.
  double euclidean_distortion() const;
  void check_point(ConstVec x, std::string_view what = "point") const;
};

/// Extended real: a double restricted to non-NaN values, with +-inf allowed.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : v_(std::isnan(v) ? kInf : v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtReal plus_inf() { return ExtReal(kInf); }
  static constexpr ExtReal minus_inf() { return ExtReal(-kInf); }

  constexpr double value() const { return v_; }
  constexpr bool is_finite() const { return v_ != kInf && v_ != -kInf; }
  constexpr bool is_plus_inf() const { return v_ == kInf; }
  constexpr bool is_minus_inf() const { return v_ == -kInf; }

  // inf-addition: (+inf) + (-inf) = +inf
  friend constexpr ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_plus_inf() || b.is_plus_inf()) return plus_inf();
    return ExtReal(a.v_ + b.v_);
  }
  friend constexpr ExtReal operator-(ExtReal a) { return ExtReal(-a.v_); }
  friend constexpr auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }
  friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }

 private:
  double v_ = 0.0;
};

double dot(ConstVec a, ConstVec b);
Point add(ConstVec a, ConstVec b);
Point sub(ConstVec a, ConstVec b);
Point axpy(double alpha, ConstVec x, ConstVec y);  // alpha * x + y
Point scaled(double alpha, ConstVec x);
double euclidean_norm(ConstVec v);

}  // namespace slopelab
