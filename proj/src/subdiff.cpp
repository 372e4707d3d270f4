#include "slopelab/subdiff.hpp"

#include <algorithm>
#include <cmath>

#include "slopelab/errors.hpp"
#include "slopelab/lp.hpp"
#include "slopelab/rng.hpp"
#include "slopelab/sphere.hpp"

namespace slopelab {

namespace {

constexpr double kInteriorTol = 1e-6;
constexpr double kSupportTol = 1e-12;
constexpr std::size_t kSphereTilts = 32;
constexpr std::size_t kSearchDirections = 64;

// f - phi as a function; polyhedral whenever f is.
FunctionSpec minus_phi(const FunctionSpec& f, const PhiMember& phi) {
  if (auto pa = to_piecewise_affine(f)) {
    std::vector<MaxAffine> comps;
    for (const auto& c : pa->components) {
      for (const auto& g : phi.generators) {
        MaxAffine m;
        for (const auto& p : c.pieces) m.pieces.push_back({sub(p.a, g), p.b});
        comps.push_back(std::move(m));
      }
    }
    return FunctionSpec::min_of_max_affine(f.space, std::move(comps));
  }
  std::vector<Expression> terms;
  for (const auto& g : phi.generators) terms.push_back(Expression::affine(g, 0.0));
  ExpressionPerturbation e{Expression::neg(Expression::max(std::move(terms))), phi.lipschitz(f.space), std::nullopt};
  return FunctionSpec::perturbed_sum(f, PerturbationSpec{e});
}

Tri decide_rate(const RateBracket& b, double threshold) {
  if (b.certified) return b.lower.value() >= threshold - kExactTol ? Tri::kIn : Tri::kOut;
  if (b.lower.value() > threshold) return Tri::kIn;
  if (b.upper.value() < threshold) return Tri::kOut;
  return Tri::kUndecided;
}

Tri global_membership(const FunctionSpec& h, ConstVec xbar, std::uint64_t seed) {
  const double base = evaluate(h, xbar).value();
  if (auto pa = to_piecewise_affine(h)) {
    for (const auto& c : pa->components) {
      std::vector<Point> g;
      std::vector<double> e;
      for (const auto& p : c.pieces) {
        g.push_back(p.a);
        e.push_back(p.b);
      }
      if (lp::min_of_max_affine(g, e) < base - kExactTol) return Tri::kOut;
    }
    return Tri::kIn;
  }
  // counterexample search on geometric shells; a violation is a certificate of exclusion
  const auto dirs = sphere::sample_directions(h.space, kSearchDirections, seed);
  for (double r = 1e-4; r <= 1e3; r *= 2.0) {
    for (const auto& u : dirs) {
      if (evaluate(h, axpy(r, u, xbar)).value() < base - kExactTol) return Tri::kOut;
    }
  }
  return Tri::kUndecided;
}

SpaceConfig dual_space(const SpaceConfig& space) {
  SpaceConfig d = space;
  if (space.norm == Norm::kEll1) d.norm = Norm::kEllInf;
  else if (space.norm == Norm::kEllInf) d.norm = Norm::kEll1;
  return d;
}

}  // namespace

PhiMember PhiMember::dual_affine(Point xstar) {
  PhiMember m;
  m.generators.push_back(std::move(xstar));
  m.affine = true;
  return m;
}

PhiMember PhiMember::sublinear(std::vector<Point> generators) {
  if (generators.empty()) fail(ErrorCode::kInvalidArgument, "sublinear member needs at least one generator");
  PhiMember m;
  m.generators = std::move(generators);
  m.affine = false;
  return m;
}

double PhiMember::value(ConstVec x) const {
  double m = -kInf;
  for (const auto& g : generators) m = std::max(m, dot(g, x));
  return m;
}

double PhiMember::lipschitz(const SpaceConfig& space) const {
  double m = 0.0;
  for (const auto& g : generators) m = std::max(m, space.dual_norm_of(g));
  return m;
}

std::string MembershipMode::name() const {
  switch (kind) {
    case Kind::kGlobal: return "global";
    case Kind::kLocal: return "local";
    case Kind::kEpsLocal: return "eps_local(" + std::to_string(eps) + ")";
  }
  return "global";
}

Polytope convex_subdifferential(const FunctionSpec& f, ConstVec xbar, double tol) {
  const auto* m = std::get_if<MaxAffine>(&f.body);
  if (!m) fail(ErrorCode::kPrecondition, "convex subdifferential needs a max_affine function");
  f.space.check_point(xbar, "xbar");
  std::vector<Point> grads;
  for (std::size_t i : active_pieces(*m, xbar, tol)) grads.push_back(m->pieces[i].a);
  return Polytope::hull(f.space.dim, std::move(grads));
}

Tri regular_subdiff_membership(const FunctionSpec& f, ConstVec xbar, ConstVec xstar, const RadiusSchedule& sched,
                               double tol) {
  f.space.check_point(xstar, "subgradient candidate");
  const RateBracket b = grsl_exact(tilted(f, xstar, xbar), xbar, sched);
  if (b.certified) return b.lower.value() >= -tol ? Tri::kIn : Tri::kOut;
  if (b.upper.value() < 0.0) return Tri::kOut;
  return Tri::kUndecided;
}

Tri phi_subdifferential_membership(const FunctionSpec& f, ConstVec xbar, const PhiMember& phi, MembershipMode mode,
                                   const RadiusSchedule& sched) {
  for (const auto& g : phi.generators) f.space.check_point(g, "phi generator");
  if (!evaluate(f, xbar).is_finite()) fail(ErrorCode::kDomain, "function value at the base point is not finite");
  const FunctionSpec h = minus_phi(f, phi);
  switch (mode.kind) {
    case MembershipMode::Kind::kGlobal: return global_membership(h, xbar, sched.seed);
    case MembershipMode::Kind::kEpsLocal:
      if (mode.eps < 0.0) fail(ErrorCode::kInvalidArgument, "eps must be non-negative");
      return decide_rate(grsl_exact(h, xbar, sched), -mode.eps);
    case MembershipMode::Kind::kLocal: return decide_rate(grsl_exact(h, xbar, sched), 0.0);
  }
  return Tri::kUndecided;
}

SubdiffResult subdifferential(const FunctionSpec& f, ConstVec xbar, MembershipMode mode, bool regular) {
  SubdiffResult r;
  const Point base(xbar.begin(), xbar.end());
  if (regular) {
    r.kind_tag = "regular";
    r.membership = [f, base](const PhiMember& phi) {
      if (!phi.affine) fail(ErrorCode::kInvalidArgument, "regular subgradients are vectors");
      return regular_subdiff_membership(f, base, phi.generators.front());
    };
  } else {
    r.kind_tag = mode.kind == MembershipMode::Kind::kGlobal ? "phi_global" : "phi_local(" + mode.name() + ")";
    r.membership = [f, base, mode](const PhiMember& phi) { return phi_subdifferential_membership(f, base, phi, mode); };
  }
  if (f.is_max_affine()) {
    r.polytope = convex_subdifferential(f, xbar);
    if (!regular && mode.kind == MembershipMode::Kind::kGlobal) r.kind_tag = "convex";
  }
  return r;
}

ProbeReport supporting_distance_check(const PhiFamily& fam, const SpaceConfig& space, const std::vector<double>& eps_list,
                                      const std::vector<std::pair<Point, Point>>& point_pairs) {
  ProbeReport r;
  r.claim_id = "supporting-distance";
  r.claim = "the eps-ball of the family supports eps times the distance (kappa = 1)";
  r.tolerance("absolute", kSupportTol);
  const bool polyhedral_norm = space.norm != Norm::kEuclidean;
  double max_err = 0.0, max_excess = 0.0;
  std::size_t checked = 0;
  Rng rng(7);
  for (double eps : eps_list) {
    if (eps < 0.0) fail(ErrorCode::kInvalidArgument, "eps must be non-negative");
    for (const auto& [x, xbar] : point_pairs) {
      space.check_point(x);
      space.check_point(xbar);
      const Point v = sub(x, xbar);
      const double target = eps * space.norm_of(v);
      const Point xstar = scaled(eps, space.dual_norming_vector(v));
      if (space.dual_norm_of(xstar) > eps * (1.0 + kSupportTol) + kSupportTol) {
        r.fail_with("x", x, "maximizer leaves the eps-ball");
        continue;
      }
      double sup = dot(xstar, v);
      if (fam.kind == PhiFamily::Kind::kSublinearFinite && polyhedral_norm) {
        // eps * ||.|| is itself a finitely generated member of Lipschitz constant eps
        std::vector<Point> gens;
        const std::size_t n = space.dim;
        if (space.norm == Norm::kEll1) {
          for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            Point g(n);
            for (std::size_t i = 0; i < n; ++i) g[i] = ((mask >> i) & 1U) ? eps : -eps;
            gens.push_back(g);
          }
        } else {
          for (std::size_t i = 0; i < n; ++i)
            for (double s : {eps, -eps}) {
              Point g(n, 0.0);
              g[i] = s;
              gens.push_back(g);
            }
        }
        if (gens.size() <= fam.max_generators) {
          const PhiMember norm_member = PhiMember::sublinear(gens);
          sup = std::max(sup, norm_member.value(x) - norm_member.value(xbar));
        }
      }
      // no member of the ball may exceed eps * ||v|| (Hoelder)
      for (int k = 0; k < 4; ++k) {
        Point w(space.dim);
        for (auto& c : w) c = rng.normal();
        const double dn = space.dual_norm_of(w);
        if (dn > 0) max_excess = std::max(max_excess, dot(scaled(eps * rng.uniform() / dn, w), v) - target);
      }
      const double err = fam.kind == PhiFamily::Kind::kDualAffine ? std::abs(sup - target) : std::max(0.0, target - sup);
      max_err = std::max(max_err, err);
      ++checked;
      if (err > kSupportTol) r.fail_with("x", x, "supremum misses eps * d(x, xbar) at xbar given in the note");
    }
  }
  r.set("pairs_checked", static_cast<double>(checked));
  r.set("max_error", max_err);
  r.set("max_excess_of_random_members", max_excess);
  if (max_excess > kSupportTol) r.fail_with("member", {}, "a member of the eps-ball exceeds eps * distance");
  return r;
}

ProbeReport phi_convexity_check(const FunctionSpec& f, const std::vector<Point>& sample_points) {
  const auto* m = std::get_if<MaxAffine>(&f.body);
  if (!m) fail(ErrorCode::kPrecondition, "phi-convexity check needs a max_affine function");
  ProbeReport r;
  r.claim_id = "phi-convexity";
  r.claim = "f equals the supremum of its affine minorants at every sample point";
  r.tolerance("absolute", 1e-12);
  for (const auto& x : sample_points) {
    f.space.check_point(x);
    const double fx = m->value(x);
    const auto act = active_pieces(*m, x, 0.0);
    const auto& w = m->pieces[act.front()];
    bool minorant = true;
    for (const auto& y : sample_points) minorant = minorant && w.value(y) <= m->value(y) + 1e-12;
    if (!minorant || std::abs(w.value(x) - fx) > 1e-12) r.fail_with("x", x, "no affine minorant attains f here");
    else r.witnesses.push_back({"piece " + std::to_string(act.front()), x, "attains f(x) = " + std::to_string(fx)});
  }
  r.set("points", static_cast<double>(sample_points.size()));
  return r;
}

ProbeReport condition_C_characterization_check(const FunctionSpec& f, ConstVec xbar) {
  const auto ex = exact_descent(f, xbar);
  if (!ex) fail(ErrorCode::kPrecondition, "condition (C) characterization needs a polyhedral function in dim <= 3");
  ProbeReport r;
  r.claim_id = "cond-c-char";
  r.claim = "condition (C) holds iff 0 is interior to the subdifferential";
  r.tolerance("value_agreement", kInteriorTol);
  const double grsl = ex->value;
  r.set("grsl", grsl);
  const SpaceConfig& space = f.space;

  if (f.is_max_affine()) {
    const Polytope p = convex_subdifferential(f, xbar);
    const double ir = interior_radius(space, p);
    r.set("interior_radius", ir);
    const bool cond = grsl > kExactTol, interior = ir > kExactTol;
    if (cond != interior) r.fail_with("xbar", Point(xbar.begin(), xbar.end()), "sign of grsl and interiority disagree");
    if (std::abs(grsl - ir) > kInteriorTol)
      r.fail_with("direction", ex->direction, "grsl differs from the inner radius of the subdifferential");
    return r;
  }

  // Regular subdifferential of a min-of-max function, probed through tilted rates.
  std::size_t undecided = 0, tried = 0;
  auto member = [&](const Point& xstar) {
    ++tried;
    const Tri t = regular_subdiff_membership(f, xbar, xstar);
    if (t == Tri::kUndecided) ++undecided;
    return t;
  };
  if (grsl > kExactTol) {
    const SpaceConfig ds = dual_space(space);
    for (double frac : {0.5, 0.9}) {
      for (const auto& w : sphere::sample_directions(ds, kSphereTilts, 11)) {
        const Point xstar = scaled(frac * grsl, w);
        if (member(xstar) == Tri::kOut) r.fail_with("xstar", xstar, "tilt inside the grsl ball is not a regular subgradient");
      }
    }
  }
  // A tilt just beyond grsl along the steepest direction must be excluded.
  const double beyond = grsl > kExactTol ? 1.1 * grsl : 1e-3;
  const Point xstar = scaled(beyond, space.dual_norming_vector(ex->direction));
  if (member(xstar) == Tri::kIn) r.fail_with("xstar", xstar, "tilt beyond grsl is still a regular subgradient");
  else r.witnesses.push_back({"excluded_tilt", xstar, "not a regular subgradient"});
  if (space.dim == 1) {
    double lo = -kInf, hi = kInf;
    for (const auto& comp : ex->local.active) {
      double clo = kInf, chi = -kInf;
      for (const auto& a : comp) {
        clo = std::min(clo, a[0]);
        chi = std::max(chi, a[0]);
      }
      lo = std::max(lo, clo);
      hi = std::min(hi, chi);
    }
    r.set("regular_subdiff_lo", lo);
    r.set("regular_subdiff_hi", hi);
  }
  r.set("memberships", static_cast<double>(tried));
  r.set("undecided", static_cast<double>(undecided));
  if (undecided > 0 && r.status == Status::kPass) r.mark_undecided("some memberships could not be decided");
  return r;
}

ProbeReport nesting_check(const FunctionSpec& f, ConstVec xbar, const std::vector<PhiMember>& members, double eps,
                          const RadiusSchedule& sched) {
  ProbeReport r;
  r.claim_id = "nesting";
  r.claim = "global, 0-local, local and eps-local Phi-subdifferentials are nested";
  r.set("eps", eps);
  const MembershipMode modes[] = {MembershipMode::global(), MembershipMode::eps_local(0.0), MembershipMode::local(),
                                  MembershipMode::eps_local(eps)};
  std::size_t violations = 0, accepted = 0, undecided = 0;
  for (const auto& phi : members) {
    Tri t[4];
    for (int i = 0; i < 4; ++i) {
      t[i] = phi_subdifferential_membership(f, xbar, phi, modes[i], sched);
      if (t[i] == Tri::kIn) ++accepted;
      if (t[i] == Tri::kUndecided) ++undecided;
    }
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (t[i] == Tri::kIn && t[j] == Tri::kOut) {
          ++violations;
          r.fail_with("generator", phi.generators.front(), "accepted by " + modes[i].name() + " but rejected by " +
                                                               modes[j].name());
        }
  }
  r.set("members", static_cast<double>(members.size()));
  r.set("accepted", static_cast<double>(accepted));
  r.set("undecided", static_cast<double>(undecided));
  r.set("violations", static_cast<double>(violations));
  r.tolerance("violations", 0.0);
  return r;
}

}  // namespace slopelab
