#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slopelab/function.hpp"
#include "slopelab/polytope.hpp"
#include "slopelab/rates.hpp"
#include "slopelab/report.hpp"

namespace slopelab {

struct PhiFamily {
  enum class Kind { kDualAffine, kSublinearFinite };
  Kind kind = Kind::kDualAffine;
  std::size_t max_generators = 8;  // SublinearFinite only
};

/// A member of a Phi family. Affine members are stored without their constant
/// (x -> <x*, x>); sublinear members are x -> max_j <g_j, x>.
struct PhiMember {
  std::vector<Point> generators;  // a single generator for affine members
  bool affine = true;

  static PhiMember dual_affine(Point xstar);
  static PhiMember sublinear(std::vector<Point> generators);
  static PhiMember zero(std::size_t dim) { return dual_affine(Point(dim, 0.0)); }

  double value(ConstVec x) const;
  /// Lipschitz constant with respect to the space norm.
  double lipschitz(const SpaceConfig& space) const;
};

struct MembershipMode {
  enum class Kind { kGlobal, kEpsLocal, kLocal };
  Kind kind = Kind::kGlobal;
  double eps = 0.0;  // kEpsLocal only

  static MembershipMode global() { return {Kind::kGlobal, 0.0}; }
  static MembershipMode eps_local(double eps) { return {Kind::kEpsLocal, eps}; }
  static MembershipMode local() { return {Kind::kLocal, 0.0}; }
  std::string name() const;
};

struct SubdiffResult {
  std::optional<Polytope> polytope;
  std::function<Tri(const PhiMember&)> membership;
  std::string kind_tag;  // convex, regular, phi_global, phi_local(eps)
};

/// Convex hull of the active gradients of a max-affine function.
Polytope convex_subdifferential(const FunctionSpec& f, ConstVec xbar, double tol = kExactTol);

/// Is x* a regular subgradient? Decided from the steepest descent rate of the
/// tilted function x -> f(x) - <x*, x>.
Tri regular_subdiff_membership(const FunctionSpec& f, ConstVec xbar, ConstVec xstar, const RadiusSchedule& sched = {},
                               double tol = kExactTol);

Tri phi_subdifferential_membership(const FunctionSpec& f, ConstVec xbar, const PhiMember& phi, MembershipMode mode,
                                   const RadiusSchedule& sched = {});

/// Bundles polytope and membership oracle for one subdifferential notion.
SubdiffResult subdifferential(const FunctionSpec& f, ConstVec xbar, MembershipMode mode, bool regular = false);

/// Sup over the eps-ball of the family of phi(x) - phi(xbar), realized by an
/// explicit maximizer, compared with eps * d(x, xbar).
ProbeReport supporting_distance_check(const PhiFamily& fam, const SpaceConfig& space, const std::vector<double>& eps_list,
                                      const std::vector<std::pair<Point, Point>>& point_pairs);

ProbeReport phi_convexity_check(const FunctionSpec& f, const std::vector<Point>& sample_points);

ProbeReport condition_C_characterization_check(const FunctionSpec& f, ConstVec xbar);

/// Accepted sets of global, eps_local(0), local and eps_local(eps) membership
/// must be nested for every member tried.
ProbeReport nesting_check(const FunctionSpec& f, ConstVec xbar, const std::vector<PhiMember>& members, double eps,
                          const RadiusSchedule& sched = {});

}  // namespace slopelab
