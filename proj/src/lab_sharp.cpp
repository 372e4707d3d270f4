#include <algorithm>
#include <cmath>

#include "lab_internal.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/lab.hpp"
#include "slopelab/rng.hpp"
#include "slopelab/sphere.hpp"

namespace slopelab {

namespace {
constexpr double kSharpTol = 1e-3;
}  // namespace

namespace detail {

Point unit(const SpaceConfig& space, Point w) {
  const double n = space.norm_of(w);
  for (auto& v : w) v /= n;
  return w;
}

std::size_t default_grid_points(std::size_t dim) {
  switch (dim) {
    case 1: return 2001;
    case 2: return 201;
    default: return 41;
  }
}

void for_each_box_point(ConstVec center, double half, std::size_t per_dim, const std::function<void(ConstVec)>& visit) {
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

MinimalityVerdict local_minimality(const FunctionSpec& h, ConstVec xbar) {
  const double hbar = evaluate(h, xbar).value();
  MinimalityVerdict v;
  if (auto ex = exact_descent(h, xbar)) {
    v.certified = true;
    if (ex->value >= -kExactTol) {
      v.verdict = Tri::kIn;
      return v;
    }
    v.verdict = Tri::kOut;
    for (double t = std::min(0.5 * ex->local.cell_radius, 1.0); t > 1e-12; t *= 0.5) {
      const Point x = axpy(t, ex->direction, xbar);
      if (evaluate(h, x).value() < hbar) {
        v.witness = x;
        return v;
      }
    }
    return v;
  }
  const std::size_t count = h.space.dim == 1 ? 2 : 2048;
  const auto dirs = sphere::sample_directions(h.space, count, 5);
  for (double r = 1e-2; r >= 1e-6; r *= 0.25) {
    for (const auto& u : dirs) {
      const Point x = axpy(r, u, xbar);
      if (evaluate(h, x).value() < hbar - 1e-14) {
        v.verdict = Tri::kOut;
        v.certified = true;  // an explicit descent point refutes minimality
        v.witness = x;
        return v;
      }
    }
  }
  v.verdict = Tri::kIn;  // evidence only
  return v;
}

}  // namespace detail

namespace {

constexpr double kSigmaStep = 1e-4;

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Value used when a bracket must be compared with a number.
double representative(const RateBracket& b) { return b.certified ? b.lower.value() : b.midpoint(); }

// sigma > 0 accepted by the growth bracket: certified value or a positive lower end.
double positive_rate(const RateBracket& b, const char* what) {
  const double s = b.lower.value();
  if (!(s > kExactTol)) fail(ErrorCode::kPrecondition, std::string(what) + " needs a positive steepest descent rate");
  return s;
}

}  // namespace

PerturbationBatch PerturbationBatch::random(const SpaceConfig& space, std::size_t count, double budget,
                                            std::uint64_t seed, const Point& anchor) {
  PerturbationBatch b;
  b.count = count;
  b.budget = budget;
  b.seed = seed;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t pieces = 1 + mix(seed, 1000 + i) % 4;
    b.specs.push_back(PerturbationSpec{make_random_max_affine(space, mix(seed, i), budget, anchor, pieces)});
  }
  return b;
}

void PerturbationBatch::validate(const SpaceConfig& space, ConstVec anchor) const {
  if (!(budget > 0.0)) fail(ErrorCode::kInvalidArgument, "batch budget must be positive");
  for (const auto& g : specs) {
    if (g.budget() > budget * (1.0 + 1e-12))
      fail(ErrorCode::kInvalidArgument, "perturbation exceeds the batch budget");
    if (g.evaluate(space, anchor).value() != 0.0)
      fail(ErrorCode::kInvalidArgument, "perturbation does not vanish at the anchor");
  }
}

RateBracket sharpness_modulus(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched) {
  RateBracket b = grsl_exact(f, xbar, sched);
  // sampled brackets resolve rates only down to the accuracy of the estimator
  const double thr = b.certified ? kExactTol : kSharpTol;
  if (b.upper.value() <= thr) b.branch = "not-sharp";
  else if (b.lower.value() > thr) b.branch = "sharp";
  else b.branch = "undecided";
  b.lower = ExtReal(std::max(0.0, b.lower.value()));
  b.upper = ExtReal(std::max(0.0, b.upper.value()));
  return b;
}

ProbeReport sharp_equivalence_check(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched) {
  const SpaceConfig& space = f.space;
  if (space.dim > 3) fail(ErrorCode::kPrecondition, "sharp equivalence check needs dim <= 3");
  ProbeReport r;
  r.claim_id = "sharp-equiv";
  r.claim = "steepest descent rate equals the modulus of local sharpness";
  const double fbar = evaluate(f, xbar).value();

  // Direct search: the largest grid sigma with f(x) >= f(xbar) + sigma d(x, xbar) on every sample.
  const std::size_t count = space.dim == 1 ? 2 : (space.dim == 2 ? 65536 : 200000);
  const auto dirs = sphere::sample_directions(space, count, sched.seed);
  double m = kInf;
  for (double t = 1e-3; t > 2e-5; t *= 0.5)
    for (const auto& u : dirs) m = std::min(m, (evaluate(f, axpy(t, u, xbar)).value() - fbar) / t);
  const double sigma_grid = std::floor(m / kSigmaStep + 1e-9) * kSigmaStep;

  double tol = kSharpTol;
  if (space.dim == 3) {
    if (auto lip = local_lipschitz_bound(f, xbar, 1e-3))
      tol = std::max(tol, *lip * sphere::covering_radius(space, count));
  }
  const RateBracket g = grsl_exact(f, xbar, sched);
  r.set("grsl", representative(g));
  r.set("grsl_certified", g.certified ? 1.0 : 0.0);
  r.set("shar_sigma_grid", sigma_grid);
  r.set("sampled_min_quotient", m);
  r.tolerance("agreement", tol);
  r.tolerance("sigma_step", kSigmaStep);
  if (!g.contains(sigma_grid, tol)) r.fail_with("xbar", Point(xbar.begin(), xbar.end()), "grsl and shar disagree");
  const bool sharp_g = representative(g) > kSharpTol, sharp_s = sigma_grid > kSharpTol;
  r.set("sharp", sharp_g ? 1.0 : 0.0);
  if (sharp_g != sharp_s && std::abs(representative(g) - sigma_grid) > tol)
    r.fail_with("xbar", Point(xbar.begin(), xbar.end()), "sharpness verdicts disagree");
  return r;
}

ProbeReport superstability_probe(const FunctionSpec& f, ConstVec xbar, const PerturbationBatch& batch,
                                 const RadiusSchedule& sched) {
  const SpaceConfig& space = f.space;
  const double sigma = positive_rate(grsl_exact(f, xbar, sched), "superstability");
  if (batch.budget >= sigma) fail(ErrorCode::kPrecondition, "perturbation budget must be below grsl");
  batch.validate(space, xbar);

  ProbeReport r;
  r.claim_id = "superstable";
  r.claim = "local minimality survives every perturbation whose strong slope is below grsl";
  r.set("grsl", sigma);
  r.set("budget", batch.budget);
  r.set("perturbations", static_cast<double>(batch.specs.size()));
  r.tolerance("exact", kExactTol);
  r.note("the claim quantifies over all perturbations; sampled certified families and the extremal cone are evidence");

  std::size_t preserved = 0, certified = 0;
  double min_rate = kInf;
  auto check = [&](const PerturbationSpec& g, const std::string& label) {
    const FunctionSpec h = FunctionSpec::perturbed_sum(f, g);
    const auto v = detail::local_minimality(h, xbar);
    if (v.certified) ++certified;
    if (auto ex = exact_descent(h, xbar)) {
      min_rate = std::min(min_rate, ex->value);
      if (ex->value < sigma - g.budget() - kExactTol)
        r.fail_with(label, Point(xbar.begin(), xbar.end()), "grsl(f+g) fell below grsl(f) - budget");
    }
    if (v.verdict == Tri::kOut) r.fail_with(label, v.witness, "perturbed function decreases here");
    else ++preserved;
  };
  for (std::size_t i = 0; i < batch.specs.size(); ++i) check(batch.specs[i], "perturbation " + std::to_string(i));
  check(PerturbationSpec{NegDistCone{0.5 * sigma, Point(xbar.begin(), xbar.end())}}, "cone eps=0.5*grsl");
  r.set("preserved", static_cast<double>(preserved));
  r.set("certified_checks", static_cast<double>(certified));
  if (std::isfinite(min_rate)) r.set("min_perturbed_grsl", min_rate);

  // Extremal witness: g = -eps d(., xbar) with eps beyond grsl must destroy minimality.
  const double eps = 1.5 * sigma;
  const FunctionSpec broken = FunctionSpec::perturbed_sum(f, PerturbationSpec{NegDistCone{eps, Point(xbar.begin(), xbar.end())}});
  const auto v = detail::local_minimality(broken, xbar);
  r.set("converse_eps", eps);
  if (v.verdict == Tri::kOut) r.witnesses.push_back({"converse descent point", v.witness, "f - eps d(., xbar) drops below f(xbar)"});
  else r.fail_with("converse", Point(xbar.begin(), xbar.end()), "cone with eps = 1.5 grsl did not break minimality");
  return r;
}

}  // namespace slopelab
