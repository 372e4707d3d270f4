#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "slopelab/bracket.hpp"
#include "slopelab/expression.hpp"
#include "slopelab/space.hpp"

namespace slopelab {

struct AffinePiece {
  Point a;
  double b = 0.0;
  double value(ConstVec x) const { return dot(a, x) + b; }
};

/// f(x) = max_i <a_i, x> + b_i
struct MaxAffine {
  std::vector<AffinePiece> pieces;
  double value(ConstVec x) const;
};

/// f(x) = min_j max_i <a_ji, x> + b_ji. Also the canonical form of every
/// polyhedral function handled by the exact paths.
struct MinOfMaxAffine {
  std::vector<MaxAffine> components;
  double value(ConstVec x) const;
};

/// g(x) = -eps * d(x, anchor)
struct NegDistCone {
  double eps = 0.0;
  Point anchor;
};

/// g(x) = sign * max_i <a_i, x - anchor>, every ||a_i||_* <= budget.
struct RandomMaxAffine {
  std::uint64_t seed = 0;
  double budget = 0.0;
  Point anchor;
  std::vector<Point> gradients;
  double sign = 1.0;
};

struct ExpressionPerturbation {
  Expression ast;
  double declared_budget = 0.0;
  std::optional<Point> anchor;
};

struct PerturbationSpec {
  std::variant<NegDistCone, RandomMaxAffine, ExpressionPerturbation> kind;

  ExtReal evaluate(const SpaceConfig& space, ConstVec x) const;
  /// Certified bound on the Lipschitz constant (hence on the strong slope at the anchor).
  double budget() const;
  std::optional<Point> anchor() const;
};

/// Draws `count` gradients uniformly from the dual ball of radius `budget`.
RandomMaxAffine make_random_max_affine(const SpaceConfig& space, std::uint64_t seed, double budget, Point anchor,
                                       std::size_t count = 4);

struct FunctionSpec;

struct PerturbedSum {
  std::shared_ptr<const FunctionSpec> base;
  PerturbationSpec perturbation;
};

/// An extended-real-valued function on (R^n, norm). Immutable once built.
struct FunctionSpec {
  SpaceConfig space;
  std::variant<MaxAffine, MinOfMaxAffine, Expression, PerturbedSum> body;

  static FunctionSpec max_affine(SpaceConfig space, std::vector<AffinePiece> pieces);
  static FunctionSpec min_of_max_affine(SpaceConfig space, std::vector<MaxAffine> components);
  static FunctionSpec expression(SpaceConfig space, Expression ast);
  static FunctionSpec perturbed_sum(FunctionSpec base, PerturbationSpec perturbation);

  bool is_max_affine() const { return std::holds_alternative<MaxAffine>(body); }
  bool is_min_of_max_affine() const { return std::holds_alternative<MinOfMaxAffine>(body); }
  std::string_view variant_name() const;
};

ExtReal evaluate(const FunctionSpec& f, ConstVec x);

/// Max dual norm over all affine pieces; nullopt ("estimate only") for other variants.
std::optional<double> lipschitz_constant(const FunctionSpec& f);
/// Any certified global Lipschitz bound: polyhedral pieces, expression composition
/// rules, and perturbation budgets.
std::optional<double> lipschitz_bound(const FunctionSpec& f);

/// Lipschitz bound valid on the ball B(center, radius); tighter than
/// lipschitz_bound for expressions and defined for products and exp.
std::optional<double> local_lipschitz_bound(const FunctionSpec& f, ConstVec center, double radius);

/// Indices (0-based) of pieces with <a_i, x> + b_i >= f(x) - tol.
std::vector<std::size_t> active_pieces(const MaxAffine& f, ConstVec x, double tol = kExactTol);

/// Exact min-of-max-affine form when the representation is polyhedral.
std::optional<MinOfMaxAffine> to_piecewise_affine(const FunctionSpec& f);

/// Active structure of a polyhedral function around xbar. Inside B(xbar, cell_radius)
/// f(xbar + v) = f(xbar) + min_k max_{a in active[k]} <a, v>.
struct LocalStructure {
  double value = 0.0;
  std::vector<std::vector<Point>> active;
  double cell_radius = 1.0;
  double max_dual_norm = 0.0;  // over the active gradients

  double directional_derivative(ConstVec u) const;
};
LocalStructure local_structure(const MinOfMaxAffine& f, const SpaceConfig& space, ConstVec xbar,
                               double tol = kExactTol);

/// x -> f(x) - c
FunctionSpec shifted(const FunctionSpec& f, double c);
/// x -> f(x) - <xstar, x - xbar>
FunctionSpec tilted(const FunctionSpec& f, ConstVec xstar, ConstVec xbar);
/// The perturbation g itself as a function (polyhedral whenever possible).
FunctionSpec perturbation_function(const SpaceConfig& space, const PerturbationSpec& g);
/// Sum of two polyhedral functions in min-of-max form.
MinOfMaxAffine sum_piecewise_affine(const MinOfMaxAffine& f, const MinOfMaxAffine& g);

struct GridConfig {
  std::size_t points_per_dim = 0;  // 0 picks a dimension-dependent default
  std::size_t refine_passes = 3;
  double initial_half_width = 1.0;
  std::size_t max_expansions = 24;
};

/// Bracket on dist(x, {f <= alpha}). `hint` is a candidate point of the sublevel
/// set; when f is max-affine, f(hint) = alpha and the steepest descent rate at the
/// hint is positive, the sublevel set is exactly {hint} and the result is certified.
RateBracket sublevel_distance(const FunctionSpec& f, double alpha, ConstVec x, const GridConfig& grid = {},
                              std::optional<Point> hint = std::nullopt);

}  // namespace slopelab
