#include <algorithm>
#include <cmath>

#include "lab_internal.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/lab.hpp"
#include "slopelab/rng.hpp"
#include "slopelab/sphere.hpp"

namespace slopelab {

namespace {

struct GridMin {
  double value = kInf;
  Point argmin;
  bool interior = false;  // some minimizing grid point lies off the box boundary
};

// Minimum over the uniform grid of the box, scaled by `stretch` about its center.
GridMin grid_minimum(const FunctionSpec& f, const Box& box, double stretch) {
  const std::size_t n = f.space.dim, per = detail::default_grid_points(n);
  GridMin g;
  std::vector<std::size_t> idx(n, 0);
  Point x(n);
  while (true) {
    bool inner = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = 0.5 * (box.lo[i] + box.hi[i]), h = 0.5 * (box.hi[i] - box.lo[i]) * stretch;
      x[i] = c - h + 2.0 * h * static_cast<double>(idx[i]) / static_cast<double>(per - 1);
      inner = inner && idx[i] > 0 && idx[i] + 1 < per;
    }
    const double v = evaluate(f, x).value();
    if (v < g.value) {
      g.value = v;
      g.argmin = x;
      g.interior = inner;
    } else if (v == g.value && inner && !g.interior) {
      g.argmin = x;
      g.interior = true;
    }
    std::size_t d = 0;
    while (d < n && ++idx[d] == per) idx[d++] = 0;
    if (d == n) break;
  }
  return g;
}

// Upper bound on grsl f(x): exact when polyhedral, sampled otherwise.
double grsl_upper(const FunctionSpec& f, ConstVec x, const RadiusSchedule& sched) {
  return grsl_exact(f, x, sched).upper.value();
}

// min over the unit sphere of the Hadamard lower derivative at x (upper ends on sampled paths).
double min_hadamard(const FunctionSpec& f, ConstVec x, const RadiusSchedule& sched) {
  const std::size_t count = f.space.dim == 1 ? 2 : 32;
  double m = kInf;
  for (const auto& u : sphere::sample_directions(f.space, count, sched.seed))
    m = std::min(m, hadamard_lower_derivative(f, x, u, sched).upper.value());
  return m;
}

}  // namespace

ProbeReport existence_condition_check(const FunctionSpec& f, const Box& box, double sigma, std::size_t sample_count,
                                      std::uint64_t seed) {
  const SpaceConfig& space = f.space;
  space.check_point(box.lo, "box lower corner");
  space.check_point(box.hi, "box upper corner");
  if (space.dim > 3) fail(ErrorCode::kUnsupported, "existence check needs dim <= 3");
  for (std::size_t i = 0; i < space.dim; ++i)
    if (!(box.lo[i] < box.hi[i])) fail(ErrorCode::kInvalidArgument, "box must have positive width");
  if (!(sigma > 0.0)) fail(ErrorCode::kInvalidArgument, "sigma must be positive");

  ProbeReport r;
  r.claim_id = "existence";
  r.claim = "sup of grsl over the strict superlevel set of inf f below -sigma implies a minimizer";
  r.note("computation restricted to the given box; only the implication is asserted");
  r.set("sigma", sigma);

  const GridMin g = grid_minimum(f, box, 1.0);
  r.set("grid_inf", g.value);
  if (!std::isfinite(g.value)) {
    r.mark_undecided("infimum over the box is not finite");
    return r;
  }
  // unbounded-below detection: enlarging the box keeps lowering the minimum
  const GridMin g2 = grid_minimum(f, box, 2.0), g4 = grid_minimum(f, box, 4.0);
  const double drop_tol = 1e-6 * (1.0 + std::abs(g.value));
  const bool unbounded = g2.value < g.value - drop_tol && g4.value < g2.value - drop_tol;
  r.set("unbounded_suspected", unbounded ? 1.0 : 0.0);

  // minimizer found: a grid argmin off the box boundary, so the minimum over the box is
  // attained in its interior and is a local minimizer of f itself
  const bool found = g.interior;
  r.set("minimizer_found", found ? 1.0 : 0.0);
  if (found) r.witnesses.push_back({"argmin", g.argmin, "interior grid minimizer"});

  // hypothesis on samples of the strict superlevel set {f > inf f}
  const RadiusSchedule sched{1.0, 0.5, 10, 256, seed};
  Rng rng(seed);
  double sup_grsl = -kInf, sup_hadamard = -kInf;
  std::size_t used = 0;
  for (std::size_t s = 0; s < sample_count; ++s) {
    Point x(space.dim);
    for (std::size_t i = 0; i < space.dim; ++i) x[i] = rng.uniform(box.lo[i], box.hi[i]);
    const ExtReal fx = evaluate(f, x);
    if (!fx.is_finite() || !(fx.value() > g.value + 1e-9)) continue;
    ++used;
    sup_grsl = std::max(sup_grsl, grsl_upper(f, x, sched));
    sup_hadamard = std::max(sup_hadamard, min_hadamard(f, x, sched));
  }
  const bool hypothesis = sup_grsl < -sigma;
  r.set("superlevel_samples", static_cast<double>(used));
  r.set("sup_grsl", sup_grsl);
  r.set("sup_min_hadamard", sup_hadamard);
  r.set("hypothesis_holds", hypothesis ? 1.0 : 0.0);
  r.set("hadamard_hypothesis_holds", sup_hadamard < -sigma ? 1.0 : 0.0);

  if (unbounded) {
    r.mark_undecided("minimum keeps decreasing as the box grows");
    return r;
  }
  if (hypothesis && !found) r.fail_with("box_argmin", g.argmin, "hypothesis holds on samples but no minimizer found");
  if (!hypothesis) r.note("hypothesis fails on samples; nothing is asserted");
  return r;
}

Point tilt_argmin(const FunctionSpec& f, ConstVec xbar, ConstVec xstar, double delta) {
  const SpaceConfig& space = f.space;
  space.check_point(xbar, "xbar");
  space.check_point(xstar, "tilt");
  if (space.dim > 3) fail(ErrorCode::kUnsupported, "tilt argmin needs dim <= 3");
  const FunctionSpec h = tilted(f, xstar, xbar);
  Point best(xbar.begin(), xbar.end());
  double best_v = evaluate(h, xbar).value();
  detail::for_each_box_point(xbar, delta, detail::default_grid_points(space.dim), [&](ConstVec y) {
    if (space.distance(y, xbar) > delta) return;
    const double v = evaluate(h, y).value();
    if (v < best_v - 1e-12) {
      best_v = v;
      best.assign(y.begin(), y.end());
    }
  });
  return best;
}

ProbeReport tilt_stability_probe(const FunctionSpec& f, ConstVec xbar, double delta, double tilt_radius,
                                 std::size_t count, std::uint64_t seed) {
  const SpaceConfig& space = f.space;
  const RateBracket g = grsl_exact(f, xbar);
  const double sigma = g.lower.value();
  if (!(sigma > kExactTol)) fail(ErrorCode::kPrecondition, "tilt stability needs a positive grsl");
  if (!(delta > 0.0) || delta >= sigma) fail(ErrorCode::kPrecondition, "delta must lie in (0, grsl)");
  if (!(tilt_radius >= 0.0) || tilt_radius >= sigma - delta)
    fail(ErrorCode::kPrecondition, "tilt radius must lie in [0, grsl - delta)");

  ProbeReport r;
  r.claim_id = "tilt";
  r.claim = "small tilts keep xbar as the unique minimizer over the delta-ball";
  r.set("grsl", sigma);
  r.set("delta", delta);
  r.set("tilt_radius", tilt_radius);
  const Point base(xbar.begin(), xbar.end());

  // tilts uniform in the dual ball: random dual-norm direction, radius tilt_radius * U^(1/n)
  SpaceConfig dual = space;
  if (space.norm == Norm::kEll1) dual.norm = Norm::kEllInf;
  else if (space.norm == Norm::kEllInf) dual.norm = Norm::kEll1;
  Rng rng(seed);
  std::vector<Point> tilts{Point(space.dim, 0.0)};
  for (std::size_t i = 0; i < count; ++i) {
    Point w(space.dim);
    for (auto& c : w) c = rng.normal();
    const double rad = tilt_radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(space.dim));
    tilts.push_back(scaled(rad / dual.norm_of(w), w));
  }
  double min_tilted = kInf;
  std::size_t moved = 0;
  for (const auto& xs : tilts) {
    const FunctionSpec h = tilted(f, xs, xbar);
    const RateBracket th = grsl_exact(h, xbar);
    min_tilted = std::min(min_tilted, th.lower.value());
    if (th.certified && !(th.lower.value() > 0.0)) r.fail_with("tilt", xs, "tilted grsl is not positive");
    const Point am = tilt_argmin(f, xbar, xs, delta);
    if (space.distance(am, xbar) > 0.0) {
      ++moved;
      r.fail_with("tilt", xs, "grid argmin over the ball moved off xbar");
    }
  }
  r.set("tilts", static_cast<double>(tilts.size()));
  r.set("min_tilted_grsl", min_tilted);
  r.set("moved", static_cast<double>(moved));
  if (!g.certified) r.mark_undecided("grsl of f is an estimate; argmin checked on a grid only");
  return r;
}

}  // namespace slopelab
