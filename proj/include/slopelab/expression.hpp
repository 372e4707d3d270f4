#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "slopelab/space.hpp"

namespace slopelab {

enum class ExprOp { kConst, kCoord, kAdd, kSub, kMul, kNeg, kAbs, kMax, kMin, kNorm, kExp, kScale, kDist };

struct ExprNode {
  ExprOp op = ExprOp::kConst;
  double value = 0.0;     // constant, or the factor of kScale
  std::size_t index = 0;  // kCoord
  Point point;            // kDist
  std::vector<std::shared_ptr<const ExprNode>> args;
};

/// Immutable expression tree over R^n. Evaluation never throws on overflow:
/// non-finite intermediate results saturate to +inf.
class Expression {
 public:
  Expression() : Expression(constant(0.0)) {}
  explicit Expression(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

  static Expression constant(double v);
  static Expression coord(std::size_t i);
  static Expression norm();                  // ||x||
  static Expression dist(Point center);      // ||x - center||
  static Expression abs(const Expression& e);
  static Expression exp(const Expression& e);
  static Expression neg(const Expression& e);
  static Expression scale(double factor, const Expression& e);
  static Expression max(std::vector<Expression> args);
  static Expression min(std::vector<Expression> args);
  static Expression sum(std::vector<Expression> args);
  static Expression product(std::vector<Expression> args);
  static Expression difference(const Expression& a, const Expression& b);
  /// <c, x> + b as a tree.
  static Expression affine(ConstVec c, double b);

  friend Expression operator+(const Expression& a, const Expression& b) { return sum({a, b}); }
  friend Expression operator-(const Expression& a, const Expression& b) { return difference(a, b); }
  friend Expression operator*(const Expression& a, const Expression& b) { return product({a, b}); }

  ExtReal evaluate(const SpaceConfig& space, ConstVec x) const;
  /// Global Lipschitz bound w.r.t. the space norm, from the composition rules of
  /// the tree; nullopt when a node (product, exp) is not globally Lipschitz.
  std::optional<double> lipschitz_bound() const;
  /// Lipschitz bound valid on the ball B(center, radius), from interval ranges of
  /// every subexpression; covers products and exp. nullopt on overflow.
  std::optional<double> local_lipschitz_bound(const SpaceConfig& space, ConstVec center, double radius) const;
  /// Largest coordinate index referenced, or -1.
  long max_coord() const;

  const ExprNode& root() const { return *root_; }
  std::shared_ptr<const ExprNode> root_ptr() const { return root_; }

 private:
  std::shared_ptr<const ExprNode> root_;
};

}  // namespace slopelab
