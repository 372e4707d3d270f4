#include "slopelab/expression.hpp"

#include <algorithm>

#include "slopelab/errors.hpp"

namespace slopelab {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

Expression make(ExprOp op, std::vector<Expression> args = {}, double value = 0.0) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->value = value;
  for (auto& a : args) n->args.push_back(a.root_ptr());
  return Expression(std::move(n));
}

double saturate(double v) { return std::isnan(v) ? kInf : v; }

double eval_node(const ExprNode& n, const SpaceConfig& space, ConstVec x) {
  switch (n.op) {
    case ExprOp::kConst: return n.value;
    case ExprOp::kCoord: return x[n.index];
    case ExprOp::kAdd: {
      double s = 0.0;
      for (const auto& a : n.args) s = saturate(s + eval_node(*a, space, x));
      return s;
    }
    case ExprOp::kSub:
      return saturate(eval_node(*n.args[0], space, x) - eval_node(*n.args[1], space, x));
    case ExprOp::kMul: {
      double p = 1.0;
      for (const auto& a : n.args) p = saturate(p * eval_node(*a, space, x));
      return p;
    }
    case ExprOp::kNeg: return -eval_node(*n.args[0], space, x);
    case ExprOp::kAbs: return std::abs(eval_node(*n.args[0], space, x));
    case ExprOp::kMax: {
      double m = -kInf;
      for (const auto& a : n.args) m = std::max(m, eval_node(*a, space, x));
      return m;
    }
    case ExprOp::kMin: {
      double m = kInf;
      for (const auto& a : n.args) m = std::min(m, eval_node(*a, space, x));
      return m;
    }
    case ExprOp::kNorm: return space.norm_of(x);
    case ExprOp::kExp: return std::exp(eval_node(*n.args[0], space, x));
    case ExprOp::kScale: return saturate(n.value * eval_node(*n.args[0], space, x));
    case ExprOp::kDist: return space.distance(x, n.point);
  }
  return kInf;
}

std::optional<double> lip_node(const ExprNode& n) {
  switch (n.op) {
    case ExprOp::kConst: return 0.0;
    case ExprOp::kCoord: return 1.0;  // |x_i - y_i| <= ||x - y|| for l1, l2, linf
    case ExprOp::kNorm:
    case ExprOp::kDist: return 1.0;
    case ExprOp::kAdd:
    case ExprOp::kSub: {
      double s = 0.0;
      for (const auto& a : n.args) {
        auto l = lip_node(*a);
        if (!l) return std::nullopt;
        s += *l;
      }
      return s;
    }
    case ExprOp::kMax:
    case ExprOp::kMin: {
      double m = 0.0;
      for (const auto& a : n.args) {
        auto l = lip_node(*a);
        if (!l) return std::nullopt;
        m = std::max(m, *l);
      }
      return m;
    }
    case ExprOp::kNeg:
    case ExprOp::kAbs: return lip_node(*n.args[0]);
    case ExprOp::kScale: {
      auto l = lip_node(*n.args[0]);
      if (!l) return std::nullopt;
      return std::abs(n.value) * *l;
    }
    case ExprOp::kMul: {
      // products with at most one non-constant factor stay Lipschitz
      double factor = 1.0;
      std::optional<double> lip = 0.0;
      int non_const = 0;
      for (const auto& a : n.args) {
        if (a->op == ExprOp::kConst) {
          factor *= a->value;
        } else {
          ++non_const;
          lip = lip_node(*a);
        }
      }
      if (non_const > 1 || !lip) return std::nullopt;
      return std::abs(factor) * *lip;
    }
    case ExprOp::kExp: return std::nullopt;
  }
  return std::nullopt;
}

// Range of a node over a ball together with a Lipschitz bound on that ball.
struct Local {
  double lo = 0.0;
  double hi = 0.0;
  double lip = 0.0;
  double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
};

Local local_node(const ExprNode& n, const SpaceConfig& space, ConstVec c, double r) {
  switch (n.op) {
    case ExprOp::kConst: return {n.value, n.value, 0.0};
    case ExprOp::kCoord: return {c[n.index] - r, c[n.index] + r, 1.0};
    case ExprOp::kNorm: {
      const double m = space.norm_of(c);
      return {std::max(0.0, m - r), m + r, 1.0};
    }
    case ExprOp::kDist: {
      const double m = space.distance(c, n.point);
      return {std::max(0.0, m - r), m + r, 1.0};
    }
    case ExprOp::kAdd: {
      Local s;
      for (const auto& a : n.args) {
        const Local l = local_node(*a, space, c, r);
        s = {s.lo + l.lo, s.hi + l.hi, s.lip + l.lip};
      }
      return s;
    }
    case ExprOp::kSub: {
      const Local a = local_node(*n.args[0], space, c, r), b = local_node(*n.args[1], space, c, r);
      return {a.lo - b.hi, a.hi - b.lo, a.lip + b.lip};
    }
    case ExprOp::kNeg: {
      const Local a = local_node(*n.args[0], space, c, r);
      return {-a.hi, -a.lo, a.lip};
    }
    case ExprOp::kAbs: {
      const Local a = local_node(*n.args[0], space, c, r);
      const double lo = (a.lo <= 0.0 && a.hi >= 0.0) ? 0.0 : std::min(std::abs(a.lo), std::abs(a.hi));
      return {lo, a.mag(), a.lip};
    }
    case ExprOp::kScale: {
      const Local a = local_node(*n.args[0], space, c, r);
      const double p = n.value * a.lo, q = n.value * a.hi;
      return {std::min(p, q), std::max(p, q), std::abs(n.value) * a.lip};
    }
    case ExprOp::kMax:
    case ExprOp::kMin: {
      const bool is_max = n.op == ExprOp::kMax;
      Local out = local_node(*n.args[0], space, c, r);
      for (std::size_t i = 1; i < n.args.size(); ++i) {
        const Local l = local_node(*n.args[i], space, c, r);
        out.lo = is_max ? std::max(out.lo, l.lo) : std::min(out.lo, l.lo);
        out.hi = is_max ? std::max(out.hi, l.hi) : std::min(out.hi, l.hi);
        out.lip = std::max(out.lip, l.lip);
      }
      return out;
    }
    case ExprOp::kMul: {
      Local out{1.0, 1.0, 0.0};
      for (const auto& a : n.args) {
        const Local l = local_node(*a, space, c, r);
        const double cand[] = {out.lo * l.lo, out.lo * l.hi, out.hi * l.lo, out.hi * l.hi};
        const double lip = out.mag() * l.lip + l.mag() * out.lip;
        out = {*std::min_element(std::begin(cand), std::end(cand)), *std::max_element(std::begin(cand), std::end(cand)),
               lip};
      }
      return out;
    }
    case ExprOp::kExp: {
      const Local a = local_node(*n.args[0], space, c, r);
      return {std::exp(a.lo), std::exp(a.hi), std::exp(a.hi) * a.lip};
    }
  }
  return {-kInf, kInf, kInf};
}

long max_coord_node(const ExprNode& n) {
  long m = n.op == ExprOp::kCoord ? static_cast<long>(n.index) : -1;
  for (const auto& a : n.args) m = std::max(m, max_coord_node(*a));
  return m;
}

}  // namespace

Expression Expression::constant(double v) { return make(ExprOp::kConst, {}, v); }

Expression Expression::coord(std::size_t i) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::kCoord;
  n->index = i;
  return Expression(std::move(n));
}

Expression Expression::norm() { return make(ExprOp::kNorm); }

Expression Expression::dist(Point center) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::kDist;
  n->point = std::move(center);
  return Expression(std::move(n));
}

Expression Expression::abs(const Expression& e) { return make(ExprOp::kAbs, {e}); }
Expression Expression::exp(const Expression& e) { return make(ExprOp::kExp, {e}); }
Expression Expression::neg(const Expression& e) { return make(ExprOp::kNeg, {e}); }
Expression Expression::scale(double factor, const Expression& e) { return make(ExprOp::kScale, {e}, factor); }

Expression Expression::max(std::vector<Expression> args) {
  if (args.empty()) fail(ErrorCode::kInvalidArgument, "max needs at least one argument");
  return make(ExprOp::kMax, std::move(args));
}

Expression Expression::min(std::vector<Expression> args) {
  if (args.empty()) fail(ErrorCode::kInvalidArgument, "min needs at least one argument");
  return make(ExprOp::kMin, std::move(args));
}

Expression Expression::sum(std::vector<Expression> args) { return make(ExprOp::kAdd, std::move(args)); }
Expression Expression::product(std::vector<Expression> args) { return make(ExprOp::kMul, std::move(args)); }
Expression Expression::difference(const Expression& a, const Expression& b) { return make(ExprOp::kSub, {a, b}); }

Expression Expression::affine(ConstVec c, double b) {
  std::vector<Expression> terms;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0.0) terms.push_back(scale(c[i], coord(i)));
  terms.push_back(constant(b));
  return sum(std::move(terms));
}

ExtReal Expression::evaluate(const SpaceConfig& space, ConstVec x) const {
  return ExtReal(eval_node(*root_, space, x));
}

std::optional<double> Expression::lipschitz_bound() const { return lip_node(*root_); }

std::optional<double> Expression::local_lipschitz_bound(const SpaceConfig& space, ConstVec center,
                                                       double radius) const {
  const Local l = local_node(*root_, space, center, radius);
  if (!std::isfinite(l.lip)) return std::nullopt;
  return l.lip;
}

long Expression::max_coord() const { return max_coord_node(*root_); }

}  // namespace slopelab
