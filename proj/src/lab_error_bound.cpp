#include <algorithm>
#include <cmath>

#include "lab_internal.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/lab.hpp"
#include "slopelab/sphere.hpp"

namespace slopelab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kAngularMesh = 4096;
constexpr std::size_t kErrDirections = 16;
constexpr std::size_t kErrLevels = 3;
constexpr double kStabilityTol = 1e-3;
constexpr double kBracketTol = 1e-3;
constexpr std::size_t kStabilityGridPoints = 61;

// min over t >= 0 of ||u - t r||
double ray_distance(const SpaceConfig& space, const Point& u, const Point& r) {
  if (space.norm == Norm::kEuclidean) {
    const double ur = dot(u, r), rr = dot(r, r);
    if (ur <= 0.0 || rr == 0.0) return euclidean_norm(u);
    return std::sqrt(std::max(0.0, dot(u, u) - ur * ur / rr));
  }
  // convex piecewise linear in t: the minimum sits at t = 0 or at a breakpoint
  double best = space.norm_of(u);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (r[i] == 0.0) continue;
    const double t = u[i] / r[i];
    if (t > 0.0) best = std::min(best, space.norm_of(axpy(-t, r, u)));
  }
  return best;
}

// Exact error bound modulus of a polyhedral function whose local model is d(u) = ls.directional_derivative(u).
double err_exact_2d(const SpaceConfig& space, const LocalStructure& ls, double grsl) {
  auto dir = [](double th) { return Point{std::cos(th), std::sin(th)}; };
  auto d = [&](double th) { return ls.directional_derivative(dir(th)); };
  const double step = 2.0 * kPi / static_cast<double>(kAngularMesh);
  std::vector<double> vals(kAngularMesh);
  for (std::size_t j = 0; j < kAngularMesh; ++j) vals[j] = d(step * static_cast<double>(j));
  if (std::all_of(vals.begin(), vals.end(), [](double v) { return v <= 0.0; })) return kInf;

  // Boundary rays of the cone K = {d <= 0}.
  std::vector<Point> rays;
  for (std::size_t j = 0; j < kAngularMesh; ++j) {
    const std::size_t k = (j + 1) % kAngularMesh;
    const double a0 = step * static_cast<double>(j);
    if ((vals[j] <= 0.0) != (vals[k] <= 0.0)) {
      double lo = a0, hi = a0 + step;
      const bool lo_in = vals[j] <= 0.0;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((d(mid) <= 0.0) == lo_in ? lo : hi) = mid;
      }
      rays.push_back(dir(lo_in ? lo : hi));
    }
    if (vals[j] == 0.0) rays.push_back(dir(a0));
    // isolated zero between mesh points
    const double prev = vals[(j + kAngularMesh - 1) % kAngularMesh];
    if (vals[j] > 0.0 && vals[j] <= prev && vals[j] <= vals[k]) {
      double arg = a0;
      const double v = sphere::golden_section(d, a0 - step, a0 + step, 1e-13, &arg);
      if (v <= 1e-12) rays.push_back(dir(arg));
    }
  }
  if (rays.empty()) return grsl;  // K = {0}: the sublevel set is locally {xbar}

  auto ratio = [&](double th) {
    const Point u = dir(th);
    const double du = ls.directional_derivative(u);
    if (du <= 0.0) return kInf;
    double dist = kInf;
    for (const auto& r : rays) dist = std::min(dist, ray_distance(space, u, r));
    return dist > 0.0 ? du / dist : kInf;
  };
  std::vector<double> q(kAngularMesh);
  for (std::size_t j = 0; j < kAngularMesh; ++j) q[j] = ratio(step * static_cast<double>(j));
  double best = *std::min_element(q.begin(), q.end());
  for (std::size_t j = 0; j < kAngularMesh; ++j) {
    const double l = q[(j + kAngularMesh - 1) % kAngularMesh], rr = q[(j + 1) % kAngularMesh];
    if (std::isfinite(q[j]) && q[j] <= l && q[j] <= rr) {
      const double a0 = step * static_cast<double>(j);
      best = std::min(best, sphere::golden_section(ratio, a0 - step, a0 + step, 1e-12, nullptr));
    }
  }
  // the infimum may only be approached next to a boundary ray
  for (const auto& r : rays) {
    const double th = std::atan2(r[1], r[0]);
    for (double off : {1e-7, -1e-7}) best = std::min(best, ratio(th + off));
  }
  return best;
}

RateBracket err_sampled(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched, const GridConfig& grid) {
  const SpaceConfig& space = f.space;
  const auto dirs = sphere::sample_directions(space, kErrDirections, sched.seed);
  const Point base(xbar.begin(), xbar.end());
  double lo = kInf, hi = kInf;
  RateBracket b;
  b.branch = "sampled";
  const std::size_t first = sched.levels > kErrLevels ? sched.levels - kErrLevels : 0;
  for (std::size_t k = first; k < sched.levels; ++k) {
    const double r = sched.radius(k);
    LevelDiagnostic diag;
    diag.radius = r;
    for (const auto& u : dirs) {
      const Point x = axpy(r, u, xbar);
      const double fx = evaluate(f, x).value();
      if (!(fx > 0.0)) continue;
      const RateBracket dist = sublevel_distance(f, 0.0, x, grid, base);
      const double q_lo = fx / dist.upper.value();
      const double q_hi = dist.lower.value() > 0.0 ? fx / dist.lower.value() : kInf;
      lo = std::min(lo, q_lo);
      hi = std::min(hi, q_hi);
      diag.sampled_inf = std::min(diag.sampled_inf, q_lo);
      diag.sampled_sup = std::max(diag.sampled_sup, q_hi);
      ++diag.samples;
    }
    b.diagnostics.push_back(diag);
  }
  b.lower = ExtReal(lo);
  b.upper = ExtReal(hi);
  return b;
}

double rate_value(const RateBracket& b) { return b.certified ? b.lower.value() : b.midpoint(); }

}  // namespace

RateBracket error_bound_modulus(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched,
                                const GridConfig& grid) {
  sched.validate();
  const ExtReal fbar = evaluate(f, xbar);
  if (!fbar.is_finite() || std::abs(fbar.value()) > 1e-12)
    fail(ErrorCode::kPrecondition, "error bound modulus needs f(xbar) = 0");
  if (auto ex = exact_descent(f, xbar)) {
    if (ex->value > kExactTol) return RateBracket::exact(ex->value, "exact-sharp");
    if (f.space.dim == 1) {
      double best = kInf;
      for (double s : {1.0, -1.0}) {
        const double du = ex->local.directional_derivative(Point{s});
        if (du > 0.0) best = std::min(best, du);
      }
      return RateBracket::exact(best, "exact-1d");
    }
    if (f.space.dim == 2) return RateBracket::exact(err_exact_2d(f.space, ex->local, ex->value), "exact-2d");
  }
  if (f.space.dim > 3) fail(ErrorCode::kUnsupported, "error bound modulus needs dim <= 3");
  return err_sampled(f, xbar, sched, grid);
}

ProbeReport error_bound_checks(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched,
                               const GridConfig& grid) {
  ProbeReport r;
  r.claim_id = "error-bound";
  r.claim = "grsl is a lower bound of the error bound modulus; a strict minimizer with an error bound satisfies (C)";
  const RateBracket g = grsl_exact(f, xbar, sched);
  const RateBracket e = error_bound_modulus(f, xbar, sched, grid);
  const double tol = (g.certified && e.certified) ? kExactTol : kBracketTol;
  r.set("grsl", rate_value(g));
  r.set("Err_lower", e.lower.value());
  r.set("Err_upper", e.upper.value());
  r.set("certified", (g.certified && e.certified) ? 1.0 : 0.0);
  r.tolerance("inequality", tol);
  const Point base(xbar.begin(), xbar.end());
  if (g.lower.value() > e.upper.value() + tol) r.fail_with("xbar", base, "grsl exceeds the error bound modulus");

  // Converse: needs a verified strict minimizer with a verified error bound.
  if (auto ex = exact_descent(f, xbar)) {
    const double t = std::min(0.5 * ex->local.cell_radius, 1.0);
    const std::size_t count = f.space.dim == 1 ? 2 : 720;
    bool strict = true;
    for (const auto& u : sphere::sample_directions(f.space, count, sched.seed))
      strict = strict && evaluate(f, axpy(t, u, xbar)).value() > 0.0;
    const bool bound = e.certified && e.lower.value() > kExactTol;
    r.set("strict_minimizer", strict ? 1.0 : 0.0);
    r.set("local_error_bound", bound ? 1.0 : 0.0);
    if (strict && bound && !(ex->value > kExactTol))
      r.fail_with("xbar", base, "strict minimizer with an error bound but condition (C) fails");
    if (!(strict && bound)) r.note("converse premise not met; converse is vacuous here");
  } else {
    r.note("converse premise cannot be verified on the sampled path; converse not asserted");
  }
  return r;
}

ProbeReport error_bound_stability_probe(const FunctionSpec& f, ConstVec xbar, const PerturbationBatch& batch,
                                        const RadiusSchedule& sched, const GridConfig& grid) {
  const RateBracket g0 = grsl_exact(f, xbar, sched);
  const double sigma = g0.lower.value();
  if (!(sigma > kExactTol)) fail(ErrorCode::kPrecondition, "error bound stability needs a positive grsl");
  if (batch.budget >= sigma) fail(ErrorCode::kPrecondition, "perturbation budget must be below grsl");
  batch.validate(f.space, xbar);
  if (std::abs(evaluate(f, xbar).value()) > 1e-12) fail(ErrorCode::kPrecondition, "needs f(xbar) = 0");

  ProbeReport r;
  r.claim_id = "eb-stability";
  r.claim = "f + g keeps a local error bound with modulus at least grsl(f) - slope(g)";
  r.set("grsl", sigma);
  r.set("budget", batch.budget);
  r.tolerance("bound", kStabilityTol);
  const Point base(xbar.begin(), xbar.end());
  // a coarser grid keeps a batch of sampled moduli affordable; it only widens Err.upper
  GridConfig light = grid;
  if (light.points_per_dim == 0 && f.space.dim >= 2) light.points_per_dim = kStabilityGridPoints;
  double worst_margin = kInf, worst_ptb = 0.0;
  auto check = [&](const PerturbationSpec& p, const std::string& label) {
    const FunctionSpec h = FunctionSpec::perturbed_sum(f, p);
    const RateBracket e = error_bound_modulus(h, xbar, sched, light);
    const RateBracket slope = strong_slope(perturbation_function(f.space, p), xbar, sched);
    const double bound = sigma - slope.upper.value();
    worst_margin = std::min(worst_margin, e.upper.value() - bound);
    if (e.upper.value() < bound - kStabilityTol) r.fail_with(label, base, "Err(f+g) below grsl(f) - slope(g)");
    if (!(e.upper.value() > 0.0)) r.fail_with(label, base, "f+g lost its local error bound");
    // membership of f + g in the perturbation class of radius budget
    double ptb = 0.0;
    const std::size_t count = f.space.dim == 1 ? 2 : 256;
    for (const auto& u : sphere::sample_directions(f.space, count, sched.seed))
      for (double t = 1e-2; t > 1e-6; t *= 0.1)
        ptb = std::max(ptb, std::abs(p.evaluate(f.space, axpy(t, u, xbar)).value()) / t);
    worst_ptb = std::max(worst_ptb, ptb);
    if (ptb > p.budget() + 1e-9) r.fail_with(label, base, "perturbation quotient exceeds its certified budget");
  };
  for (std::size_t i = 0; i < batch.specs.size(); ++i) check(batch.specs[i], "perturbation " + std::to_string(i));
  check(PerturbationSpec{NegDistCone{0.5 * sigma, base}}, "cone eps=0.5*grsl");
  r.set("perturbations", static_cast<double>(batch.specs.size() + 1));
  r.set("worst_margin", worst_margin);
  r.set("max_ptb_quotient", worst_ptb);
  return r;
}

}  // namespace slopelab
