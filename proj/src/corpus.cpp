#include "slopelab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "slopelab/errors.hpp"
#include "slopelab/rng.hpp"
#include "slopelab/subdiff.hpp"

namespace slopelab {

namespace {

const SpaceConfig kLine{1, Norm::kEuclidean};
const SpaceConfig kPlane{2, Norm::kEuclidean};

MaxAffine abs_shifted(double c, double slope) {
  return MaxAffine{{{Point{slope}, -slope * c}, {Point{-slope}, slope * c}}};
}

std::vector<AffinePiece> hexagon_pieces() {
  std::vector<AffinePiece> p;
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 6; ++k) p.push_back({{std::cos(k * pi / 3.0), std::sin(k * pi / 3.0)}, 0.0});
  return p;
}

std::vector<CorpusEntry> build() {
  const double inf = kInf;
  const Point o1{0.0}, o2{0.0, 0.0};
  const Expression x0 = Expression::coord(0);
  std::vector<CorpusEntry> c;
  c.push_back({"abs", "convex-pa", FunctionSpec::max_affine(kLine, {{{1.0}, 0.0}, {{-1.0}, 0.0}}), o1,
               {{"grsl", 1.0}, {"shar", 1.0}, {"Err", 1.0}, {"strong_slope", 0.0}}, "closed form"});
  c.push_back({"vee_1_2", "convex-pa", FunctionSpec::max_affine(kLine, {{{1.0}, 0.0}, {{-2.0}, 0.0}}), o1,
               {{"grsl", 1.0}, {"shar", 1.0}, {"Err", 1.0}, {"strong_slope", 0.0}}, "closed form"});
  c.push_back({"displacement_0.4", "displacement", displacement(0.4), o1,
               {{"shar", 0.6}, {"grsl", 0.6}, {"Err", 0.6}, {"strong_slope", 0.0}}, "closed form, sigma = 1 - alpha"});
  c.push_back({"abs_plus_x", "convex-pa", FunctionSpec::max_affine(kLine, {{{2.0}, 0.0}, {{0.0}, 0.0}}), o1,
               {{"grsl", 0.0}, {"Err", 2.0}, {"strong_slope", 0.0}}, "closed form, sublevel set x <= 0"});
  c.push_back({"concave_abs", "nonconvex-pa",
               FunctionSpec::min_of_max_affine(kLine, {MaxAffine{{{{1.0}, 0.0}}}, MaxAffine{{{{-1.0}, 0.0}}}}), o1,
               {{"grsl", -1.0}, {"strong_slope", 1.0}, {"Err", inf}}, "closed form"});
  c.push_back({"two_wells", "nonconvex-pa", FunctionSpec::min_of_max_affine(kLine, {abs_shifted(1.0, 1.0), abs_shifted(-1.0, 1.0)}),
               Point{1.0}, {{"grsl", 1.0}, {"shar", 1.0}, {"Err", 1.0}, {"strong_slope", 0.0}}, "closed form"});
  {
    std::vector<AffinePiece> l1;
    for (double a : {1.0, -1.0})
      for (double b : {1.0, -1.0}) l1.push_back({{a, b}, 0.0});
    c.push_back({"l1_norm_2d", "convex-pa", FunctionSpec::max_affine(kPlane, l1), o2,
                 {{"grsl", 1.0}, {"shar", 1.0}, {"Err", 1.0}, {"strong_slope", 0.0}}, "closed form, min of |u1|+|u2| on the circle"});
  }
  const double hex = std::sqrt(3.0) / 2.0;
  c.push_back({"hexagon_2d", "convex-pa", FunctionSpec::max_affine(kPlane, hexagon_pieces()), o2,
               {{"grsl", hex}, {"shar", hex}, {"Err", hex}, {"strong_slope", 0.0}}, "closed form, cos(pi/6)"});
  c.push_back({"linear_3_4", "smooth", FunctionSpec::max_affine(kPlane, {{{3.0, 4.0}, 0.0}}), o2,
               {{"grsl", -5.0}, {"strong_slope", 5.0}, {"Err", 5.0}}, "closed form, minus the gradient norm"});
  {
    // union of two rectangles as the sublevel sets: a cross
    const MaxAffine wide{{{{1.0, 0.0}, 0.0}, {{-1.0, 0.0}, 0.0}, {{0.0, 2.0}, 0.0}, {{0.0, -2.0}, 0.0}}};
    const MaxAffine tall{{{{2.0, 0.0}, 0.0}, {{-2.0, 0.0}, 0.0}, {{0.0, 1.0}, 0.0}, {{0.0, -1.0}, 0.0}}};
    const double v = 2.0 / std::sqrt(5.0);
    c.push_back({"min_of_cones_2d", "nonconvex-pa", FunctionSpec::min_of_max_affine(kPlane, {wide, tall}), o2,
                 {{"grsl", v}, {"shar", v}, {"Err", v}, {"strong_slope", 0.0}}, "closed form, 2/sqrt(5)"});
  }
  c.push_back({"quadratic", "smooth", FunctionSpec::expression(kLine, x0 * x0), o1,
               {{"grsl", 0.0}, {"Err", 0.0}, {"strong_slope", 0.0}}, "closed form"});
  c.push_back({"radial_2d", "radial", FunctionSpec::expression(kPlane, Expression::norm()), o2,
               {{"grsl", 1.0}, {"shar", 1.0}, {"Err", 1.0}, {"strong_slope", 0.0}}, "closed form"});
  return c;
}

std::string fmt(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void tag(ProbeReport& r, const std::string& name) { r.claim_id += "/" + name; }

RadiusSchedule schedule(const VerifyOptions& opt) {
  RadiusSchedule s = opt.sched;
  s.seed = opt.seed;
  return s;
}

std::vector<ProbeReport> suite_sharp(const VerifyOptions& opt) {
  std::vector<ProbeReport> out;
  for (const auto& e : corpus()) {
    ProbeReport r = sharp_equivalence_check(e.f, e.xbar, schedule(opt));
    const RateBracket g = grsl_exact(e.f, e.xbar, schedule(opt));
    const double ref = e.ref("grsl");
    r.set("grsl_reference", ref);
    r.tolerance("reference", opt.tol);
    if (!g.contains(ref, opt.tol)) r.fail_with("xbar", e.xbar, "grsl disagrees with the reference value");
    tag(r, e.name);
    out.push_back(std::move(r));
  }
  return out;
}

template <class Probe>
std::vector<ProbeReport> over_sharp(const VerifyOptions& opt, Probe probe) {
  std::vector<ProbeReport> out;
  std::uint64_t i = 0;
  for (const auto& e : corpus()) {
    ++i;
    if (!(e.ref("grsl") > 0.0)) continue;
    const double sigma = grsl_exact(e.f, e.xbar, schedule(opt)).lower.value();
    const auto batch = PerturbationBatch::random(e.f.space, 100, 0.5 * sigma, derive(opt.seed, i), e.xbar);
    ProbeReport r = probe(e, batch);
    tag(r, e.name);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ProbeReport> suite_error_bound(const VerifyOptions& opt) {
  std::vector<ProbeReport> out;
  for (const auto& e : corpus()) {
    ProbeReport r = error_bound_checks(e.f, e.xbar, schedule(opt));
    tag(r, e.name);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ProbeReport> suite_existence(const VerifyOptions& opt) {
  const Expression x0 = Expression::coord(0);
  struct Case {
    std::string name;
    FunctionSpec f;
    Box box;
  };
  const std::vector<Case> cases{
      {"abs", corpus_entry("abs").f, Box{{-5.0}, {5.0}}},
      {"exp_neg", FunctionSpec::expression(kLine, Expression::exp(Expression::neg(x0))), Box{{0.0}, {20.0}}},
      {"constant", FunctionSpec::expression(kLine, Expression::constant(3.0)), Box{{-1.0}, {1.0}}},
      {"vee_1_2", corpus_entry("vee_1_2").f, Box{{-3.0}, {2.0}}},
      {"radial_2d", corpus_entry("radial_2d").f, Box{{-2.0, -1.5}, {1.0, 2.5}}},
  };
  std::vector<ProbeReport> out;
  for (const auto& c : cases) {
    ProbeReport r = existence_condition_check(c.f, c.box, 0.5, 64, opt.seed);
    tag(r, c.name);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ProbeReport> suite_tilt(const VerifyOptions& opt) {
  std::vector<ProbeReport> out;
  for (const auto& e : corpus()) {
    if (!e.polyhedral() || !(e.ref("grsl") > 0.0)) continue;
    const double sigma = grsl_exact(e.f, e.xbar).lower.value();
    ProbeReport r = tilt_stability_probe(e.f, e.xbar, 0.5 * sigma, 0.4 * sigma, 32, opt.seed);
    tag(r, e.name);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ProbeReport> suite_cond_c(const VerifyOptions&) {
  std::vector<ProbeReport> out;
  for (const auto& e : corpus()) {
    if (!e.polyhedral()) continue;
    ProbeReport r = condition_C_characterization_check(e.f, e.xbar);
    tag(r, e.name);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ProbeReport> suite_hadamard(const VerifyOptions& opt) {
  std::vector<ProbeReport> out;
  for (const auto& e : corpus()) {
    ProbeReport r = grsl_hadamard_identity_check(e.f, e.xbar, schedule(opt));
    tag(r, e.name);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ProbeReport> suite_supporting(const VerifyOptions& opt) {
  std::vector<ProbeReport> out;
  Rng rng(opt.seed);
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    for (Norm n : {Norm::kEuclidean, Norm::kEll1, Norm::kEllInf}) {
      const SpaceConfig space{dim, n};
      std::vector<std::pair<Point, Point>> pairs;
      for (int k = 0; k < 20; ++k) {
        Point x(dim), xb(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          x[i] = rng.uniform(-3.0, 3.0);
          xb[i] = rng.uniform(-3.0, 3.0);
        }
        pairs.emplace_back(std::move(x), std::move(xb));
      }
      for (auto kind : {PhiFamily::Kind::kDualAffine, PhiFamily::Kind::kSublinearFinite}) {
        ProbeReport r = supporting_distance_check(PhiFamily{kind, 8}, space, {0.1, 0.5, 1.0, 2.0}, pairs);
        tag(r, std::string(kind == PhiFamily::Kind::kDualAffine ? "dual-affine" : "sublinear") + "-" +
                   std::to_string(dim) + "d-" + std::string(norm_name(n)));
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

std::vector<ProbeReport> suite_nesting(const VerifyOptions& opt) {
  std::vector<ProbeReport> out;
  for (const auto& e : corpus()) {
    const std::size_t n = e.f.space.dim;
    std::vector<PhiMember> members{PhiMember::zero(n)};
    for (std::size_t i = 0; i < n; ++i)
      for (double s : {0.5, -0.5, 2.0, -2.0}) {
        Point v(n, 0.0);
        v[i] = s;
        members.push_back(PhiMember::dual_affine(v));
      }
    Point g(n, 0.0);
    g[0] = 0.5;
    members.push_back(PhiMember::sublinear({g, scaled(-1.0, g)}));
    ProbeReport r = nesting_check(e.f, e.xbar, members, 0.5, schedule(opt));
    tag(r, e.name);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

double CorpusEntry::ref(const std::string& key) const {
  for (const auto& [k, v] : reference)
    if (k == key) return v;
  fail(ErrorCode::kInvalidArgument, "corpus entry " + name + " has no reference value " + key);
}

FunctionSpec displacement(double alpha) {
  const double s = 1.0 - alpha;
  return FunctionSpec::max_affine(kLine, {{{s}, 0.0}, {{-s}, 0.0}});
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build();
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  fail(ErrorCode::kInvalidArgument, "unknown corpus function: " + name);
}

std::string corpus_listing() {
  std::ostringstream os;
  for (const auto& e : corpus()) {
    os << e.name << ": ";
    for (std::size_t i = 0; i < e.reference.size(); ++i)
      os << (i ? ", " : "") << e.reference[i].first << "=" << fmt(e.reference[i].second);
    os << " (" << e.family << "; " << e.origin << ")\n";
  }
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"sharp-equiv", "superstable",       "error-bound",
                                              "eb-stability", "existence",        "tilt",
                                              "cond-c-char",  "hadamard-identity", "supporting-distance",
                                              "nesting"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<ProbeReport> run_suite(const std::string& name, const VerifyOptions& opt) {
  opt.sched.validate();
  if (name == "sharp-equiv") return suite_sharp(opt);
  if (name == "superstable")
    return over_sharp(opt, [&](const CorpusEntry& e, const PerturbationBatch& b) {
      return superstability_probe(e.f, e.xbar, b, schedule(opt));
    });
  if (name == "error-bound") return suite_error_bound(opt);
  if (name == "eb-stability")
    return over_sharp(opt, [&](const CorpusEntry& e, const PerturbationBatch& b) {
      return error_bound_stability_probe(e.f, e.xbar, b, schedule(opt));
    });
  if (name == "existence") return suite_existence(opt);
  if (name == "tilt") return suite_tilt(opt);
  if (name == "cond-c-char") return suite_cond_c(opt);
  if (name == "hadamard-identity") return suite_hadamard(opt);
  if (name == "supporting-distance") return suite_supporting(opt);
  if (name == "nesting") return suite_nesting(opt);
  fail(ErrorCode::kInvalidArgument, "unknown suite: " + name);
}

}  // namespace slopelab
