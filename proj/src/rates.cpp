#include "slopelab/rates.hpp"

#include <algorithm>
#include <cmath>

#include "slopelab/errors.hpp"
#include "slopelab/sphere.hpp"

namespace slopelab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kIdentityTol = 1e-6;
constexpr double kSideTol = 1e-3;
constexpr std::size_t kCapSamples = 256;
constexpr std::size_t kIdentityDirections = 64;

double finite_base_value(const FunctionSpec& f, ConstVec xbar) {
  f.space.check_point(xbar, "xbar");
  const ExtReal v = evaluate(f, xbar);
  if (!v.is_finite()) fail(ErrorCode::kDomain, "function value at the base point is not finite");
  return v.value();
}

// (f(xbar + t v) - fbar) / t with +inf values kept as +inf.
double quotient(const FunctionSpec& f, ConstVec xbar, double fbar, ConstVec v, double t) {
  const Point x = axpy(t, v, xbar);
  const ExtReal fx = evaluate(f, x);
  if (fx.is_plus_inf()) return kInf;
  if (fx.is_minus_inf()) return -kInf;
  return (fx.value() - fbar) / t;
}

// Angular half-width used to refine the best sampled direction.
double refine_half_angle(const SpaceConfig& space, std::size_t count) {
  if (space.dim == 2) return 4.0 * kPi / static_cast<double>(count);
  return std::min(0.5, 6.0 / std::sqrt(static_cast<double>(count)));
}

struct Sweep {
  std::vector<LevelDiagnostic> levels;
  std::vector<Point> dirs;
  double last_inf = kInf;
  double last_sup = -kInf;
  std::size_t inf_index = 0;
  std::size_t sup_index = 0;
  bool prev_nonneg = true;  // all quotients >= 0 on the second-to-last level
  bool last_nonneg = true;
};

Sweep sweep(const FunctionSpec& f, ConstVec xbar, double fbar, const RadiusSchedule& sched) {
  Sweep s;
  for (std::size_t k = 0; k < sched.levels; ++k) {
    const double r = sched.radius(k);
    const auto dirs = sphere::sample_directions(f.space, sched.samples_per_level, sched.seed + k);
    LevelDiagnostic d;
    d.radius = r;
    bool nonneg = true;
    std::size_t inf_i = 0, sup_i = 0;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      const double q = quotient(f, xbar, fbar, dirs[j], r);
      if (q < d.sampled_inf) {
        d.sampled_inf = q;
        inf_i = j;
      }
      if (q > d.sampled_sup) {
        d.sampled_sup = q;
        sup_i = j;
      }
      if (q < 0.0) nonneg = false;
    }
    d.samples = dirs.size();
    s.levels.push_back(d);
    if (k + 2 == sched.levels) s.prev_nonneg = nonneg;
    if (k + 1 == sched.levels) {
      s.last_nonneg = nonneg;
      s.last_inf = d.sampled_inf;
      s.last_sup = d.sampled_sup;
      s.inf_index = inf_i;
      s.sup_index = sup_i;
      s.dirs = dirs;
    }
  }
  return s;
}

bool refinable(const SpaceConfig& space) { return space.dim == 2 || space.dim == 3; }

// Minimal directional derivative of one active component.
sphere::Minimum component_minimum(const SpaceConfig& space, const std::vector<Point>& grads) {
  return sphere::minimize_max_linear(space, grads);
}

// Step at which the difference quotient of a polyhedral function is exact.
double exact_step(const LocalStructure& ls) { return std::min(0.5 * ls.cell_radius, 1.0); }

}  // namespace

void RadiusSchedule::validate() const {
  if (!(r0 > 0.0) || !std::isfinite(r0)) fail(ErrorCode::kInvalidArgument, "schedule r0 must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) fail(ErrorCode::kInvalidArgument, "schedule ratio must lie in (0, 1)");
  if (levels < 2) fail(ErrorCode::kInvalidArgument, "schedule needs at least 2 levels");
  if (samples_per_level == 0) fail(ErrorCode::kInvalidArgument, "schedule needs at least one sample per level");
}

double RadiusSchedule::radius(std::size_t k) const { return r0 * std::pow(ratio, static_cast<double>(k)); }

std::optional<ExactDescent> exact_descent(const FunctionSpec& f, ConstVec xbar) {
  if (f.space.dim > 3) return std::nullopt;
  auto pa = to_piecewise_affine(f);
  if (!pa) return std::nullopt;
  ExactDescent out;
  out.local = local_structure(*pa, f.space, xbar);
  out.value = kInf;
  for (const auto& grads : out.local.active) {
    const auto m = component_minimum(f.space, grads);
    if (m.value < out.value) {
      out.value = m.value;
      out.direction = m.argmin;
    }
  }
  return out;
}

RateBracket grsl_exact(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched) {
  finite_base_value(f, xbar);
  if (auto ex = exact_descent(f, xbar)) return RateBracket::exact(ex->value, "exact");
  RateBracket b = grsl_estimate(f, xbar, sched);
  b.branch = "estimate";
  return b;
}

RateBracket grsl_estimate(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched) {
  sched.validate();
  const double fbar = finite_base_value(f, xbar);
  const Sweep s = sweep(f, xbar, fbar, sched);
  double upper = s.last_inf;
  if (refinable(f.space) && std::isfinite(upper)) {
    const double r = sched.radius(sched.levels - 1);
    const auto m = sphere::refine(
        f.space, [&](ConstVec u) { return quotient(f, xbar, fbar, u, r); }, s.dirs[s.inf_index],
        refine_half_angle(f.space, s.dirs.size()));
    upper = std::min(upper, m.value);
  }
  RateBracket b;
  b.branch = "sampled";
  b.diagnostics = s.levels;
  b.upper = ExtReal(upper);
  const auto lip = local_lipschitz_bound(f, xbar, sched.r0);
  const double cover = sphere::covering_radius(f.space, s.dirs.size());
  if (lip && std::isfinite(cover) && std::isfinite(upper)) b.lower = ExtReal(upper - *lip * cover);
  return b;
}

RateBracket strong_slope(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched) {
  sched.validate();
  const double fbar = finite_base_value(f, xbar);
  if (auto ex = exact_descent(f, xbar)) {
    if (ex->value >= -kExactTol) return RateBracket::exact(0.0, "local-minimizer");
    return RateBracket::exact(-ex->value, "descent");
  }
  const Sweep s = sweep(f, xbar, fbar, sched);
  RateBracket b;
  b.diagnostics = s.levels;
  if (s.prev_nonneg && s.last_nonneg) {
    b.lower = b.upper = ExtReal(0.0);
    b.branch = "local-minimizer-heuristic";
    return b;
  }
  b.branch = "sampled";
  double lower = std::max(0.0, -s.last_inf);
  if (refinable(f.space) && std::isfinite(lower)) {
    const double r = sched.radius(sched.levels - 1);
    const auto m = sphere::refine(
        f.space, [&](ConstVec u) { return quotient(f, xbar, fbar, u, r); }, s.dirs[s.inf_index],
        refine_half_angle(f.space, s.dirs.size()));
    lower = std::max(lower, -m.value);
  }
  b.lower = ExtReal(lower);
  if (const auto lip = local_lipschitz_bound(f, xbar, sched.r0)) {
    const double cover = sphere::covering_radius(f.space, s.dirs.size());
    b.upper = ExtReal(std::max(lower, std::min(*lip, lower + *lip * cover)));
  }
  return b;
}

RateBracket hadamard_lower_derivative(const FunctionSpec& f, ConstVec xbar, ConstVec u, const RadiusSchedule& sched) {
  sched.validate();
  f.space.check_point(u, "direction");
  if (std::abs(f.space.norm_of(u) - 1.0) > 1e-12) fail(ErrorCode::kInvalidArgument, "direction must be a unit vector");
  const double fbar = finite_base_value(f, xbar);

  if (auto pa = to_piecewise_affine(f)) {
    const LocalStructure ls = local_structure(*pa, f.space, xbar);
    const double t = exact_step(ls);
    return RateBracket::exact((pa->value(axpy(t, u, xbar)) - fbar) / t, "exact");
  }

  const std::size_t m = std::min(kCapSamples, sched.samples_per_level);
  const auto offsets = sphere::sample_directions(f.space, std::max<std::size_t>(m, 2), sched.seed);
  RateBracket b;
  b.branch = "sampled";
  double cap = 0.0;
  for (std::size_t k = 0; k < sched.levels; ++k) {
    const double t = sched.radius(k);
    cap = t;
    LevelDiagnostic d;
    d.radius = t;
    auto visit = [&](ConstVec v) {
      const double q = quotient(f, xbar, fbar, v, t);
      d.sampled_inf = std::min(d.sampled_inf, q);
      d.sampled_sup = std::max(d.sampled_sup, q);
      ++d.samples;
    };
    visit(u);
    for (std::size_t j = 0; j < offsets.size(); ++j) {
      const double s = static_cast<double>(j % 16 + 1) / 16.0;
      Point v = axpy(cap * s, offsets[j], u);
      v = scaled(1.0 / f.space.norm_of(v), v);
      visit(v);
    }
    b.diagnostics.push_back(d);
  }
  const double upper = b.diagnostics.back().sampled_inf;
  b.upper = ExtReal(upper);
  if (const auto lip = local_lipschitz_bound(f, xbar, sched.r0); lip && std::isfinite(upper)) b.lower = ExtReal(upper - 2.0 * *lip * cap);
  return b;
}

RateBracket local_lipschitz_modulus(const FunctionSpec& g, ConstVec xbar, const RadiusSchedule& sched) {
  sched.validate();
  finite_base_value(g, xbar);
  std::optional<double> global = local_lipschitz_bound(g, xbar, sched.r0);
  if (auto pa = to_piecewise_affine(g)) {
    const LocalStructure ls = local_structure(*pa, g.space, xbar);
    const bool simple = ls.active.size() == 1 ||
                        std::all_of(ls.active.begin(), ls.active.end(), [](const auto& c) { return c.size() == 1; });
    if (simple) return RateBracket::exact(ls.max_dual_norm, "active-gradients");
    global = ls.max_dual_norm;  // every nearby piece is active, so this still bounds the local constant
  }

  const auto dirs = sphere::sample_directions(g.space, sched.samples_per_level, sched.seed);
  RateBracket b;
  b.branch = "sampled";
  for (std::size_t k = 0; k < sched.levels; ++k) {
    const double r = sched.radius(k);
    LevelDiagnostic d;
    d.radius = r;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      const double s = static_cast<double>(j % 7 + 1) / 8.0;
      const Point x1 = axpy(r, dirs[j], xbar);
      const Point x2 = axpy(r * s, dirs[(7 * j + 1) % dirs.size()], xbar);
      for (const Point* y : {&x2, static_cast<const Point*>(nullptr)}) {
        const Point base(xbar.begin(), xbar.end());
        const Point& other = y ? *y : base;
        const double dist = g.space.distance(x1, other);
        if (dist <= 0.0) continue;
        const ExtReal a = evaluate(g, x1), c = evaluate(g, other);
        double q = kInf;
        if (a.is_finite() && c.is_finite()) q = std::abs(a.value() - c.value()) / dist;
        d.sampled_inf = std::min(d.sampled_inf, q);
        d.sampled_sup = std::max(d.sampled_sup, q);
        ++d.samples;
      }
    }
    b.diagnostics.push_back(d);
  }
  const double lower = std::max(0.0, b.diagnostics.back().sampled_sup);
  b.lower = ExtReal(lower);
  if (global) b.upper = ExtReal(std::max(lower, *global));
  return b;
}

ProbeReport grsl_hadamard_identity_check(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched) {
  if (f.space.dim > 3) fail(ErrorCode::kPrecondition, "identity check needs dim <= 3");
  ProbeReport r;
  r.claim_id = "hadamard-identity";
  r.claim = "steepest descent rate equals the minimal Hadamard lower derivative over the unit sphere";
  const double fbar = finite_base_value(f, xbar);

  if (auto ex = exact_descent(f, xbar)) {
    const auto pa = to_piecewise_affine(f);
    const double t = exact_step(ex->local);
    const auto m = sphere::minimize(f.space, [&](ConstVec u) { return (pa->value(axpy(t, u, xbar)) - fbar) / t; });
    r.set("grsl", ex->value);
    r.set("min_hadamard", m.value);
    r.set("difference", std::abs(ex->value - m.value));
    r.tolerance("equality", kIdentityTol);
    if (std::abs(ex->value - m.value) > kIdentityTol)
      r.fail_with("argmin_direction", m.argmin, "mesh minimum of the Hadamard derivative differs from grsl");
    return r;
  }

  const RateBracket g = grsl_estimate(f, xbar, sched);
  double min_upper = kInf;
  Point arg;
  for (const auto& u : sphere::sample_directions(f.space, kIdentityDirections, sched.seed)) {
    const RateBracket h = hadamard_lower_derivative(f, xbar, u, sched);
    if (h.upper.value() < min_upper) {
      min_upper = h.upper.value();
      arg = u;
    }
  }
  r.set("grsl_lower", g.lower.value());
  r.set("grsl_upper", g.upper.value());
  r.set("min_hadamard_upper", min_upper);
  r.tolerance("side_estimate", kSideTol);
  r.note("sampled path: only the side estimate grsl <= inf_u Hadamard is asserted");
  if (g.lower.value() > min_upper + kSideTol)
    r.fail_with("direction", arg, "grsl lower bound exceeds a sampled Hadamard derivative");
  return r;
}

}  // namespace slopelab
