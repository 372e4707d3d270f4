#include "slopelab/function.hpp"

#include <algorithm>

#include "slopelab/errors.hpp"
#include "slopelab/rates.hpp"
#include "slopelab/rng.hpp"

namespace slopelab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_pieces(const SpaceConfig& space, const std::vector<AffinePiece>& pieces) {
  if (pieces.empty()) fail(ErrorCode::kInvalidArgument, "max_affine needs at least one piece");
  for (const auto& p : pieces) {
    if (p.a.size() != space.dim)
      fail(ErrorCode::kDimensionMismatch, "affine piece gradient has dimension " + std::to_string(p.a.size()) +
                                              ", expected " + std::to_string(space.dim));
  }
}

MinOfMaxAffine singleton_components(const std::vector<AffinePiece>& pieces) {
  MinOfMaxAffine out;
  for (const auto& p : pieces) out.components.push_back(MaxAffine{{p}});
  return out;
}

std::optional<MinOfMaxAffine> perturbation_piecewise(const SpaceConfig& space, const PerturbationSpec& g) {
  return std::visit(
      Overloaded{
          [&](const NegDistCone& c) -> std::optional<MinOfMaxAffine> {
            const std::size_t n = space.dim;
            std::vector<AffinePiece> pieces;
            if (n == 1 || space.norm == Norm::kEll1) {
              // -eps ||v||_1 = min over sign patterns s of <-eps s, v>
              for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                Point a(n);
                for (std::size_t i = 0; i < n; ++i) a[i] = ((mask >> i) & 1U) ? c.eps : -c.eps;
                pieces.push_back({a, -dot(a, c.anchor)});
              }
            } else if (space.norm == Norm::kEllInf) {
              for (std::size_t i = 0; i < n; ++i) {
                for (double s : {1.0, -1.0}) {
                  Point a(n, 0.0);
                  a[i] = s * c.eps;
                  pieces.push_back({a, -dot(a, c.anchor)});
                }
              }
            } else {
              return std::nullopt;
            }
            return singleton_components(pieces);
          },
          [&](const RandomMaxAffine& r) -> std::optional<MinOfMaxAffine> {
            std::vector<AffinePiece> pieces;
            for (const auto& a : r.gradients) {
              Point sa = scaled(r.sign, a);
              pieces.push_back({sa, -dot(sa, r.anchor)});
            }
            if (r.sign > 0) return MinOfMaxAffine{{MaxAffine{pieces}}};
            return singleton_components(pieces);
          },
          [&](const ExpressionPerturbation&) -> std::optional<MinOfMaxAffine> { return std::nullopt; },
      },
      g.kind);
}

}  // namespace

double MaxAffine::value(ConstVec x) const {
  double m = -kInf;
  for (const auto& p : pieces) m = std::max(m, p.value(x));
  return m;
}

double MinOfMaxAffine::value(ConstVec x) const {
  double m = kInf;
  for (const auto& c : components) m = std::min(m, c.value(x));
  return m;
}

ExtReal PerturbationSpec::evaluate(const SpaceConfig& space, ConstVec x) const {
  return std::visit(Overloaded{
                        [&](const NegDistCone& c) { return ExtReal(-c.eps * space.distance(x, c.anchor)); },
                        [&](const RandomMaxAffine& r) {
                          const Point v = sub(x, r.anchor);
                          double m = -kInf;
                          for (const auto& a : r.gradients) m = std::max(m, dot(a, v));
                          return ExtReal(r.sign * m);
                        },
                        [&](const ExpressionPerturbation& e) { return e.ast.evaluate(space, x); },
                    },
                    kind);
}

double PerturbationSpec::budget() const {
  return std::visit(Overloaded{
                        [](const NegDistCone& c) { return c.eps; },
                        [](const RandomMaxAffine& r) { return r.budget; },
                        [](const ExpressionPerturbation& e) { return e.declared_budget; },
                    },
                    kind);
}

std::optional<Point> PerturbationSpec::anchor() const {
  return std::visit(Overloaded{
                        [](const NegDistCone& c) -> std::optional<Point> { return c.anchor; },
                        [](const RandomMaxAffine& r) -> std::optional<Point> { return r.anchor; },
                        [](const ExpressionPerturbation& e) { return e.anchor; },
                    },
                    kind);
}

RandomMaxAffine make_random_max_affine(const SpaceConfig& space, std::uint64_t seed, double budget, Point anchor,
                                       std::size_t count) {
  if (!(budget > 0.0)) fail(ErrorCode::kInvalidArgument, "perturbation budget must be positive");
  if (count == 0 || count > 8) fail(ErrorCode::kInvalidArgument, "random max-affine perturbation needs 1..8 pieces");
  space.check_point(anchor, "perturbation anchor");
  Rng rng(seed);
  const std::size_t n = space.dim;
  RandomMaxAffine out;
  out.seed = seed;
  out.budget = budget;
  out.anchor = std::move(anchor);
  out.sign = rng.coin() ? 1.0 : -1.0;
  for (std::size_t k = 0; k < count; ++k) {
    Point a(n);
    switch (space.norm) {
      case Norm::kEuclidean: {  // dual ball is euclidean
        for (auto& v : a) v = rng.normal();
        const double len = euclidean_norm(a);
        const double radius = budget * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
        for (auto& v : a) v = len > 0 ? v / len * radius : 0.0;
        break;
      }
      case Norm::kEll1:  // dual ball is the cube
        for (auto& v : a) v = rng.uniform(-budget, budget);
        break;
      case Norm::kEllInf: {  // dual ball is the cross-polytope
        double total = rng.exponential();
        for (auto& v : a) {
          v = rng.exponential();
          total += v;
        }
        for (auto& v : a) v = budget * v / total * (rng.coin() ? 1.0 : -1.0);
        break;
      }
    }
    // guard against rounding past the budget
    const double dn = space.dual_norm_of(a);
    if (dn > budget) a = scaled(budget / dn, a);
    out.gradients.push_back(std::move(a));
  }
  return out;
}

FunctionSpec FunctionSpec::max_affine(SpaceConfig space, std::vector<AffinePiece> pieces) {
  if (space.dim == 0) fail(ErrorCode::kInvalidArgument, "space dimension must be >= 1");
  check_pieces(space, pieces);
  return FunctionSpec{space, MaxAffine{std::move(pieces)}};
}

FunctionSpec FunctionSpec::min_of_max_affine(SpaceConfig space, std::vector<MaxAffine> components) {
  if (space.dim == 0) fail(ErrorCode::kInvalidArgument, "space dimension must be >= 1");
  if (components.empty()) fail(ErrorCode::kInvalidArgument, "min_of_max_affine needs at least one component");
  for (const auto& c : components) check_pieces(space, c.pieces);
  return FunctionSpec{space, MinOfMaxAffine{std::move(components)}};
}

FunctionSpec FunctionSpec::expression(SpaceConfig space, Expression ast) {
  if (space.dim == 0) fail(ErrorCode::kInvalidArgument, "space dimension must be >= 1");
  if (ast.max_coord() >= static_cast<long>(space.dim))
    fail(ErrorCode::kDimensionMismatch, "expression references coordinate " + std::to_string(ast.max_coord()) +
                                            " in dimension " + std::to_string(space.dim));
  return FunctionSpec{space, std::move(ast)};
}

FunctionSpec FunctionSpec::perturbed_sum(FunctionSpec base, PerturbationSpec perturbation) {
  if (auto anchor = perturbation.anchor()) base.space.check_point(*anchor, "perturbation anchor");
  if (const auto* r = std::get_if<RandomMaxAffine>(&perturbation.kind)) {
    for (const auto& a : r->gradients) base.space.check_point(a, "perturbation gradient");
  }
  if (const auto* e = std::get_if<ExpressionPerturbation>(&perturbation.kind)) {
    if (e->ast.max_coord() >= static_cast<long>(base.space.dim))
      fail(ErrorCode::kDimensionMismatch, "perturbation expression references a coordinate out of range");
  }
  const SpaceConfig space = base.space;
  return FunctionSpec{space, PerturbedSum{std::make_shared<const FunctionSpec>(std::move(base)), std::move(perturbation)}};
}

std::string_view FunctionSpec::variant_name() const {
  return std::visit(Overloaded{
                        [](const MaxAffine&) { return std::string_view("max_affine"); },
                        [](const MinOfMaxAffine&) { return std::string_view("min_of_max_affine"); },
                        [](const Expression&) { return std::string_view("expression"); },
                        [](const PerturbedSum&) { return std::string_view("perturbed_sum"); },
                    },
                    body);
}

ExtReal evaluate(const FunctionSpec& f, ConstVec x) {
  f.space.check_point(x);
  return std::visit(Overloaded{
                        [&](const MaxAffine& m) { return ExtReal(m.value(x)); },
                        [&](const MinOfMaxAffine& m) { return ExtReal(m.value(x)); },
                        [&](const Expression& e) { return e.evaluate(f.space, x); },
                        [&](const PerturbedSum& p) {
                          return evaluate(*p.base, x) + p.perturbation.evaluate(f.space, x);
                        },
                    },
                    f.body);
}

std::optional<double> lipschitz_constant(const FunctionSpec& f) {
  auto pieces_max = [&](const std::vector<AffinePiece>& pieces, double acc) {
    for (const auto& p : pieces) acc = std::max(acc, f.space.dual_norm_of(p.a));
    return acc;
  };
  if (const auto* m = std::get_if<MaxAffine>(&f.body)) return pieces_max(m->pieces, 0.0);
  if (const auto* m = std::get_if<MinOfMaxAffine>(&f.body)) {
    double acc = 0.0;
    for (const auto& c : m->components) acc = pieces_max(c.pieces, acc);
    return acc;
  }
  return std::nullopt;
}

std::optional<double> lipschitz_bound(const FunctionSpec& f) {
  if (auto l = lipschitz_constant(f)) return l;
  if (const auto* e = std::get_if<Expression>(&f.body)) return e->lipschitz_bound();
  if (const auto* p = std::get_if<PerturbedSum>(&f.body)) {
    auto base = lipschitz_bound(*p->base);
    if (!base) return std::nullopt;
    return *base + p->perturbation.budget();
  }
  return std::nullopt;
}

std::optional<double> local_lipschitz_bound(const FunctionSpec& f, ConstVec center, double radius) {
  if (auto l = lipschitz_constant(f)) return l;
  if (const auto* e = std::get_if<Expression>(&f.body)) {
    auto global = e->lipschitz_bound();
    auto local = e->local_lipschitz_bound(f.space, center, radius);
    if (global && local) return std::min(*global, *local);
    return local ? local : global;
  }
  if (const auto* p = std::get_if<PerturbedSum>(&f.body)) {
    auto base = local_lipschitz_bound(*p->base, center, radius);
    if (!base) return std::nullopt;
    return *base + p->perturbation.budget();
  }
  return std::nullopt;
}

std::vector<std::size_t> active_pieces(const MaxAffine& f, ConstVec x, double tol) {
  if (tol < 0) fail(ErrorCode::kInvalidArgument, "tolerance must be non-negative");
  const double fx = f.value(x);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.pieces.size(); ++i)
    if (f.pieces[i].value(x) >= fx - tol) out.push_back(i);
  return out;
}

std::optional<MinOfMaxAffine> to_piecewise_affine(const FunctionSpec& f) {
  return std::visit(Overloaded{
                        [](const MaxAffine& m) -> std::optional<MinOfMaxAffine> { return MinOfMaxAffine{{m}}; },
                        [](const MinOfMaxAffine& m) -> std::optional<MinOfMaxAffine> { return m; },
                        [](const Expression&) -> std::optional<MinOfMaxAffine> { return std::nullopt; },
                        [&](const PerturbedSum& p) -> std::optional<MinOfMaxAffine> {
                          auto base = to_piecewise_affine(*p.base);
                          if (!base) return std::nullopt;
                          auto g = perturbation_piecewise(f.space, p.perturbation);
                          if (!g) return std::nullopt;
                          return sum_piecewise_affine(*base, *g);
                        },
                    },
                    f.body);
}

MinOfMaxAffine sum_piecewise_affine(const MinOfMaxAffine& f, const MinOfMaxAffine& g) {
  MinOfMaxAffine out;
  for (const auto& cf : f.components) {
    for (const auto& cg : g.components) {
      MaxAffine comp;
      for (const auto& pf : cf.pieces)
        for (const auto& pg : cg.pieces) comp.pieces.push_back({add(pf.a, pg.a), pf.b + pg.b});
      out.components.push_back(std::move(comp));
    }
  }
  return out;
}

double LocalStructure::directional_derivative(ConstVec u) const {
  double best = kInf;
  for (const auto& comp : active) {
    double m = -kInf;
    for (const auto& a : comp) m = std::max(m, dot(a, u));
    best = std::min(best, m);
  }
  return best;
}

LocalStructure local_structure(const MinOfMaxAffine& f, const SpaceConfig& space, ConstVec xbar, double tol) {
  space.check_point(xbar, "xbar");
  LocalStructure s;
  std::vector<double> comp_values;
  double lip_all = 0.0;
  for (const auto& c : f.components) {
    comp_values.push_back(c.value(xbar));
    for (const auto& p : c.pieces) lip_all = std::max(lip_all, space.dual_norm_of(p.a));
  }
  s.value = *std::min_element(comp_values.begin(), comp_values.end());
  double min_gap = kInf;
  for (std::size_t k = 0; k < f.components.size(); ++k) {
    const double ck = comp_values[k];
    if (ck > s.value + tol) {
      min_gap = std::min(min_gap, ck - s.value);
      continue;
    }
    std::vector<Point> grads;
    for (const auto& p : f.components[k].pieces) {
      const double v = p.value(xbar);
      if (v >= ck - tol) {
        grads.push_back(p.a);
        s.max_dual_norm = std::max(s.max_dual_norm, space.dual_norm_of(p.a));
      } else {
        min_gap = std::min(min_gap, ck - v);
      }
    }
    s.active.push_back(std::move(grads));
  }
  // every affine piece moves by at most lip_all * r, so a gap closes no sooner than gap / (2 lip_all)
  if (lip_all > 0.0 && min_gap < kInf) s.cell_radius = std::min(1.0, min_gap / (4.0 * lip_all));
  return s;
}

FunctionSpec shifted(const FunctionSpec& f, double c) {
  return std::visit(Overloaded{
                        [&](const MaxAffine& m) {
                          MaxAffine out = m;
                          for (auto& p : out.pieces) p.b -= c;
                          return FunctionSpec{f.space, out};
                        },
                        [&](const MinOfMaxAffine& m) {
                          MinOfMaxAffine out = m;
                          for (auto& comp : out.components)
                            for (auto& p : comp.pieces) p.b -= c;
                          return FunctionSpec{f.space, out};
                        },
                        [&](const Expression& e) {
                          return FunctionSpec{f.space, e - Expression::constant(c)};
                        },
                        [&](const PerturbedSum& p) {
                          return FunctionSpec::perturbed_sum(shifted(*p.base, c), p.perturbation);
                        },
                    },
                    f.body);
}

FunctionSpec tilted(const FunctionSpec& f, ConstVec xstar, ConstVec xbar) {
  f.space.check_point(xstar, "tilt vector");
  f.space.check_point(xbar, "xbar");
  const double shift = dot(xstar, xbar);
  auto tilt_pieces = [&](std::vector<AffinePiece>& pieces) {
    for (auto& p : pieces) {
      p.a = sub(p.a, xstar);
      p.b += shift;
    }
  };
  return std::visit(Overloaded{
                        [&](const MaxAffine& m) {
                          MaxAffine out = m;
                          tilt_pieces(out.pieces);
                          return FunctionSpec{f.space, out};
                        },
                        [&](const MinOfMaxAffine& m) {
                          MinOfMaxAffine out = m;
                          for (auto& comp : out.components) tilt_pieces(comp.pieces);
                          return FunctionSpec{f.space, out};
                        },
                        [&](const Expression& e) {
                          Point neg = scaled(-1.0, xstar);
                          return FunctionSpec{f.space, e + Expression::affine(neg, shift)};
                        },
                        [&](const PerturbedSum& p) {
                          return FunctionSpec::perturbed_sum(tilted(*p.base, xstar, xbar), p.perturbation);
                        },
                    },
                    f.body);
}

FunctionSpec perturbation_function(const SpaceConfig& space, const PerturbationSpec& g) {
  if (auto pa = perturbation_piecewise(space, g)) {
    if (pa->components.size() == 1) return FunctionSpec{space, pa->components.front()};
    return FunctionSpec{space, *pa};
  }
  if (const auto* c = std::get_if<NegDistCone>(&g.kind))
    return FunctionSpec{space, Expression::scale(-c->eps, Expression::dist(c->anchor))};
  return FunctionSpec{space, std::get<ExpressionPerturbation>(g.kind).ast};
}

namespace {

std::size_t default_points(std::size_t dim) {
  switch (dim) {
    case 1: return 2001;
    case 2: return 201;
    default: return 41;
  }
}

// Calls visit(y) for every point of the uniform grid on the box center +- half.
template <class Visit>
void for_each_grid_point(ConstVec center, double half, std::size_t per_dim, Visit&& visit) {
  const std::size_t n = center.size();
  std::vector<std::size_t> idx(n, 0);
  Point y(n);
  const double h = per_dim > 1 ? 2.0 * half / static_cast<double>(per_dim - 1) : 0.0;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) y[i] = center[i] - half + h * static_cast<double>(idx[i]);
    visit(y);
    std::size_t d = 0;
    while (d < n && ++idx[d] == per_dim) idx[d++] = 0;
    if (d == n) break;
  }
}

double norm_from_inf_factor(const SpaceConfig& space) {
  switch (space.norm) {
    case Norm::kEllInf: return 1.0;
    case Norm::kEuclidean: return std::sqrt(static_cast<double>(space.dim));
    case Norm::kEll1: return static_cast<double>(space.dim);
  }
  return 1.0;
}

}  // namespace

double RateBracket::midpoint() const {
  if (lower.is_finite() && upper.is_finite()) return 0.5 * (lower.value() + upper.value());
  if (upper.is_finite()) return upper.value();
  if (lower.is_finite()) return lower.value();
  return upper.value();
}

RateBracket sublevel_distance(const FunctionSpec& f, double alpha, ConstVec x, const GridConfig& grid,
                              std::optional<Point> hint) {
  const SpaceConfig& space = f.space;
  space.check_point(x);
  const ExtReal fx = evaluate(f, x);
  if (fx.value() <= alpha) return RateBracket::exact(0.0, "inside");

  if (hint) {
    space.check_point(*hint, "hint");
    if (f.is_max_affine() && std::abs(evaluate(f, *hint).value() - alpha) <= 1e-12 * std::max(1.0, std::abs(alpha)) &&
        space.dim <= 3) {
      const RateBracket g = grsl_exact(f, *hint);
      if (g.certified && g.lower.value() > kExactTol) return RateBracket::exact(space.distance(x, *hint), "singleton");
    }
  }
  if (space.dim > 3) fail(ErrorCode::kDimensionMismatch, "grid sublevel distance supports dim <= 3 only");

  auto lip = lipschitz_bound(f);
  const std::size_t per_dim = grid.points_per_dim ? grid.points_per_dim : default_points(space.dim);

  double best = kInf;
  Point best_pt;
  auto consider = [&](ConstVec y) {
    if (evaluate(f, y).value() <= alpha) {
      const double d = space.distance(x, y);
      if (d < best) {
        best = d;
        best_pt.assign(y.begin(), y.end());
      }
    }
  };
  if (hint) consider(*hint);

  double half = grid.initial_half_width;
  for (std::size_t e = 0; e <= grid.max_expansions && best == kInf; ++e, half *= 2.0)
    for_each_grid_point(x, half, per_dim, consider);

  RateBracket out;
  out.branch = "grid";
  if (best == kInf) {
    out.lower = ExtReal((lip && *lip > 0.0 && fx.is_finite()) ? (fx.value() - alpha) / *lip : 0.0);
    out.upper = ExtReal::plus_inf();
    return out;
  }

  // Full-coverage pass: the box of half-width `best` contains the ball B(x, best).
  const double cover_half = best;
  const double h = 2.0 * cover_half / static_cast<double>(per_dim - 1);
  const double delta = norm_from_inf_factor(space) * h / 2.0;
  // only the box around x matters, so a local bound is enough when no global one exists
  if (!lip) lip = local_lipschitz_bound(f, x, norm_from_inf_factor(space) * cover_half + delta);
  const double lip_lower = (lip && *lip > 0.0 && fx.is_finite()) ? (fx.value() - alpha) / *lip : 0.0;
  double relaxed = kInf;
  for_each_grid_point(x, cover_half, per_dim, [&](ConstVec y) {
    const double fy = evaluate(f, y).value();
    if (fy <= alpha) consider(y);
    if (lip && fy <= alpha + *lip * delta) relaxed = std::min(relaxed, space.distance(x, y) - delta);
  });

  // Local refinement around the incumbent.
  double local_half = 2.0 * h;
  for (std::size_t pass = 0; pass < grid.refine_passes; ++pass) {
    const Point center = best_pt;
    for_each_grid_point(center, local_half, per_dim, consider);
    local_half = 4.0 * local_half / static_cast<double>(per_dim - 1);
  }

  double lower = lip_lower;
  if (lip) lower = std::max(lower, std::min(relaxed, cover_half));
  out.upper = ExtReal(best);
  out.lower = ExtReal(std::min(std::max(lower, 0.0), best));
  return out;
}

}  // namespace slopelab
