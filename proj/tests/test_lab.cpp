#include <doctest.h>

#include <cmath>
#include <optional>

#include "frozen.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/lab.hpp"

using namespace slopelab;

namespace {
const SpaceConfig kLine{1, Norm::kEuclidean};
const SpaceConfig kPlane{2, Norm::kEuclidean};
const Point o1{0.0}, o2{0.0, 0.0};

FunctionSpec vee() { return FunctionSpec::max_affine(kLine, {{{1.0}, 0.0}, {{-2.0}, 0.0}}); }
FunctionSpec abs1() { return FunctionSpec::max_affine(kLine, {{{1.0}, 0.0}, {{-1.0}, 0.0}}); }
FunctionSpec displacement() { return FunctionSpec::max_affine(kLine, {{{0.6}, 0.0}, {{-0.6}, 0.0}}); }
FunctionSpec quad() { return FunctionSpec::expression(kLine, Expression::coord(0) * Expression::coord(0)); }
FunctionSpec abs_plus_x() { return FunctionSpec::max_affine(kLine, {{{2.0}, 0.0}, {{0.0}, 0.0}}); }

std::optional<ErrorCode> code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

bool fails_with_witness(const ProbeReport& r) { return r.status == Status::kFail && !r.witnesses.empty(); }
}  // namespace

TEST_CASE("sharpness_modulus: worked examples") {
  auto b = sharpness_modulus(displacement(), o1);
  CHECK(b.branch == "sharp");
  CHECK(b.contains(frozen::kGrslDisplacement04, 1e-9));
  b = sharpness_modulus(vee(), o1);
  CHECK(b.contains(frozen::kSharVee, 1e-9));
  CHECK(sharpness_modulus(quad(), o1).branch == "not-sharp");
  CHECK(sharpness_modulus(abs_plus_x(), o1).branch == "not-sharp");
}

TEST_CASE("sharp_equivalence_check: worked examples pass") {
  CHECK(sharp_equivalence_check(vee(), o1).status == Status::kPass);
  CHECK(sharp_equivalence_check(displacement(), o1).status == Status::kPass);
  CHECK(sharp_equivalence_check(quad(), o1).status == Status::kPass);
}

TEST_CASE("superstability_probe: 100 random perturbations with budget 0.5") {
  const auto batch = PerturbationBatch::random(kLine, 100, 0.5, 42, o1);
  CHECK(batch.specs.size() == 100);
  CHECK_NOTHROW(batch.validate(kLine, o1));
  CHECK(superstability_probe(vee(), o1, batch).status == Status::kPass);
}

TEST_CASE("superstability_probe: zero perturbation and budget precondition") {
  PerturbationBatch zero;
  zero.count = 1;
  zero.budget = 0.1;
  zero.specs.push_back(PerturbationSpec{NegDistCone{0.0, o1}});
  CHECK(superstability_probe(vee(), o1, zero).status == Status::kPass);

  const auto too_big = PerturbationBatch::random(kLine, 4, 1.0, 1, o1);
  CHECK(code_of([&] { (void)superstability_probe(vee(), o1, too_big); }) == ErrorCode::kPrecondition);
}

TEST_CASE("superstability tightness: the cone witness breaks minimality exactly above grsl") {
  for (const auto& f : {vee(), abs1(), displacement()}) {
    const double sigma = grsl_exact(f, o1).lower.value();
    for (double eps : {0.25 * sigma, 0.9 * sigma, 1.1 * sigma, 1.5 * sigma}) {
      const auto g = FunctionSpec::perturbed_sum(f, PerturbationSpec{NegDistCone{eps, o1}});
      const double s = grsl_exact(g, o1).lower.value();
      if (eps < sigma)
        CHECK(s > 0);
      else
        CHECK(s < 0);
      // the converse example: f - 1.5|x| goes negative just right of 0
      if (eps == 1.5 * sigma) CHECK(evaluate(g, Point{1e-3}).value() < 0);
    }
  }
}

TEST_CASE("error_bound_modulus: worked examples") {
  CHECK(error_bound_modulus(abs1(), o1).contains(frozen::kErrAbs, 1e-3));
  CHECK(error_bound_modulus(vee(), o1).contains(frozen::kErrVee, 1e-3));
  CHECK(error_bound_modulus(abs_plus_x(), o1).contains(frozen::kErrAbsPlusX, 1e-3));
  const auto q = error_bound_modulus(quad(), o1);
  CHECK(q.contains(0.0, 1e-3));
  CHECK(q.upper.value() < 1e-3);
}

TEST_CASE("error_bound_modulus requires f(xbar) = 0") {
  const auto f = FunctionSpec::max_affine(kLine, {{{1.0}, 1.0}, {{-1.0}, 1.0}});
  CHECK(code_of([&] { (void)error_bound_modulus(f, o1); }) == ErrorCode::kPrecondition);
}

TEST_CASE("error_bound_checks: worked examples pass") {
  CHECK(error_bound_checks(vee(), o1).status == Status::kPass);
  CHECK(error_bound_checks(quad(), o1).status == Status::kPass);
  // condition (C) is only sufficient: grsl 0 < Err 2
  const auto r = error_bound_checks(abs_plus_x(), o1);
  CHECK(r.status == Status::kPass);
}

TEST_CASE("error_bound_stability_probe: worked examples") {
  const auto batch = PerturbationBatch::random(kLine, 100, 0.5, 7, o1);
  CHECK(error_bound_stability_probe(vee(), o1, batch).status == Status::kPass);

  PerturbationBatch cone;
  cone.count = 2;
  cone.budget = 0.5;
  cone.specs = {PerturbationSpec{NegDistCone{0.0, o1}}, PerturbationSpec{NegDistCone{0.5, o1}}};
  CHECK(error_bound_stability_probe(vee(), o1, cone).status == Status::kPass);

  // max(x, -2x) - 0.5|x| has quotients 0.5 and 1.5
  const auto g = FunctionSpec::perturbed_sum(vee(), PerturbationSpec{NegDistCone{0.5, o1}});
  CHECK(error_bound_modulus(g, o1).contains(0.5, 1e-3));
}

TEST_CASE("existence_condition_check: worked examples") {
  auto r = existence_condition_check(abs1(), Box{{-5.0}, {5.0}}, 0.5, 64);
  CHECK(r.status == Status::kPass);

  const auto decay = FunctionSpec::expression(kLine, Expression::exp(Expression::neg(Expression::coord(0))));
  r = existence_condition_check(decay, Box{{0.0}, {20.0}}, 0.5, 64);
  CHECK(r.status == Status::kPass);

  const auto constant = FunctionSpec::expression(kLine, Expression::constant(3.0));
  r = existence_condition_check(constant, Box{{-1.0}, {1.0}}, 0.5, 64);
  CHECK(r.status == Status::kPass);
}

TEST_CASE("existence_condition_check: an unbounded-below function is undecided") {
  const auto lin = FunctionSpec::expression(kLine, Expression::coord(0));
  const auto r = existence_condition_check(lin, Box{{-1.0}, {1.0}}, 0.5, 16);
  CHECK(r.status != Status::kFail);
}

TEST_CASE("existence_condition_check rejects a bad box") {
  CHECK(code_of([] { (void)existence_condition_check(abs1(), Box{{1.0}, {-1.0}}, 0.5, 8); }).has_value());
}

TEST_CASE("tilt_stability_probe: worked examples") {
  CHECK(tilt_stability_probe(vee(), o1, 0.5, 0.4).status == Status::kPass);
  CHECK(tilt_stability_probe(vee(), o1, 0.5, 0.0, 1).status == Status::kPass);
  CHECK(tilt_argmin(vee(), o1, Point{0.0}, 0.5) == Point{0.0});
  // diagnostic tilt outside the admissible radius moves the argmin
  const Point m = tilt_argmin(vee(), o1, Point{1.5}, 0.5);
  CHECK(std::abs(m[0]) > 0.4);
}

TEST_CASE("tilt_stability_probe preconditions") {
  CHECK(code_of([] { (void)tilt_stability_probe(vee(), o1, 1.5, 0.1); }) == ErrorCode::kPrecondition);
  CHECK(code_of([] { (void)tilt_stability_probe(vee(), o1, 0.5, 0.6); }) == ErrorCode::kPrecondition);
  CHECK(code_of([] { (void)tilt_stability_probe(quad(), o1, 0.5, 0.1); }) == ErrorCode::kPrecondition);
}

TEST_CASE("a batch whose specs exceed the stated budget is rejected") {
  PerturbationBatch lying;
  lying.count = 1;
  lying.budget = 0.5;
  lying.specs = {PerturbationSpec{NegDistCone{1.5, o1}}};
  CHECK(code_of([&] { (void)superstability_probe(vee(), o1, lying); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("a failing report keeps its witness and is never downgraded") {
  ProbeReport r;
  r.fail_with("counterexample", Point{0.25}, "quotient below threshold");
  r.mark_undecided("later sampling was inconclusive");
  CHECK(fails_with_witness(r));
  CHECK(r.witnesses.front().point == Point{0.25});
  ProbeReport ok;
  ok.absorb(r);
  CHECK(ok.status == Status::kFail);
}

TEST_CASE("grsl <= Err bracket-wise in the plane") {
  std::vector<AffinePiece> hex;
  for (int k = 0; k < 6; ++k) hex.push_back({{std::cos(k * M_PI / 3), std::sin(k * M_PI / 3)}, 0.0});
  const auto f = FunctionSpec::max_affine(kPlane, hex);
  const auto g = grsl_exact(f, o2);
  const auto e = error_bound_modulus(f, o2);
  CHECK(g.lower.value() <= e.upper.value() + 1e-9);
  CHECK(g.contains(frozen::kGrslHexagon, 1e-9));
}
