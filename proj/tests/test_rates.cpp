#include <doctest.h>

#include <cmath>

#include "frozen.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/rates.hpp"

using namespace slopelab;

namespace {
const SpaceConfig kLine{1, Norm::kEuclidean};
const SpaceConfig kPlane{2, Norm::kEuclidean};
const Point o1{0.0}, o2{0.0, 0.0};

FunctionSpec abs1() { return FunctionSpec::max_affine(kLine, {{{1.0}, 0.0}, {{-1.0}, 0.0}}); }
FunctionSpec vee() { return FunctionSpec::max_affine(kLine, {{{1.0}, 0.0}, {{-2.0}, 0.0}}); }
FunctionSpec l1_2d() {
  std::vector<AffinePiece> p;
  for (double a : {1.0, -1.0})
    for (double b : {1.0, -1.0}) p.push_back({{a, b}, 0.0});
  return FunctionSpec::max_affine(kPlane, p);
}
FunctionSpec linear34() { return FunctionSpec::max_affine(kPlane, {{{3.0, 4.0}, 0.0}}); }
FunctionSpec quad() { return FunctionSpec::expression(kLine, Expression::coord(0) * Expression::coord(0)); }
}  // namespace

TEST_CASE("grsl_exact: worked examples") {
  for (const auto& [f, x, want] : {std::tuple{abs1(), o1, frozen::kGrslAbs}, std::tuple{vee(), o1, frozen::kGrslVee},
                                   std::tuple{l1_2d(), o2, frozen::kGrslL1}}) {
    const auto b = grsl_exact(f, x);
    CHECK(b.certified);
    CHECK(b.lower.value() == b.upper.value());
    CHECK(b.lower.value() == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("grsl_exact on expressions falls back to an uncertified estimate") {
  const auto b = grsl_exact(quad(), o1);
  CHECK_FALSE(b.certified);
  CHECK(b.branch == "estimate");
}

TEST_CASE("grsl_estimate: brackets and accuracy") {
  auto b = grsl_estimate(abs1(), o1);
  CHECK_FALSE(b.certified);
  CHECK(b.contains(1.0));
  CHECK(b.upper.value() - 1.0 <= 1e-3);

  b = grsl_estimate(quad(), o1);
  CHECK(b.contains(0.0, 1e-3));

  for (const Point& x : {o2, Point{1.0, -2.0}, Point{-7.5, 3.25}}) {
    b = grsl_estimate(linear34(), x);
    CHECK(b.contains(-5.0, 1e-9));
    CHECK(b.upper.value() + 5.0 <= 1e-3);
  }
  CHECK(b.diagnostics.size() == RadiusSchedule{}.levels);
}

TEST_CASE("grsl_estimate rejects an infinite base value") {
  const auto f = FunctionSpec::expression(kLine, Expression::exp(Expression::coord(0)));
  try {
    (void)grsl_estimate(f, Point{1e6});
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomain);
  }
}

TEST_CASE("strong_slope: worked examples") {
  auto b = strong_slope(abs1(), o1);
  CHECK(b.lower.value() == 0.0);
  CHECK(b.upper.value() == 0.0);

  for (const Point& x : {o2, Point{2.0, 1.0}}) CHECK(strong_slope(linear34(), x).contains(5.0, 1e-9));

  const auto g = FunctionSpec::max_affine(kLine, {{{0.25}, 0.0}, {{-0.25}, 0.0}});
  const auto neg = FunctionSpec::min_of_max_affine(kLine, {MaxAffine{{{{0.25}, 0.0}}}, MaxAffine{{{{-0.25}, 0.0}}}});
  CHECK(strong_slope(neg, o1).contains(0.25, 1e-9));
  CHECK(strong_slope(g, o1).upper.value() == 0.0);

  // sampled path on an expression: -0.25 |x|
  const auto e = FunctionSpec::expression(kLine, Expression::scale(-0.25, Expression::abs(Expression::coord(0))));
  b = strong_slope(e, o1);
  CHECK(b.contains(0.25, 1e-3));
}

TEST_CASE("hadamard_lower_derivative: worked examples") {
  CHECK(hadamard_lower_derivative(vee(), o1, Point{-1.0}).contains(2.0, 1e-9));
  CHECK(hadamard_lower_derivative(vee(), o1, Point{1.0}).contains(1.0, 1e-9));
  // single active piece: the gradient pairing
  const auto f = FunctionSpec::max_affine(kPlane, {{{1.0, 2.0}, 0.0}, {{-1.0, 0.5}, -3.0}});
  const Point u{0.6, 0.8};
  CHECK(hadamard_lower_derivative(f, Point{1.0, 1.0}, u).lower.value() == doctest::Approx(0.6 + 1.6));
}

TEST_CASE("hadamard_lower_derivative rejects a non-unit direction") {
  try {
    (void)hadamard_lower_derivative(vee(), o1, Point{0.5});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("hadamard_lower_derivative: sampled path agrees with the exact value") {
  const auto e = FunctionSpec::expression(
      kLine, Expression::max({Expression::coord(0), Expression::scale(-2.0, Expression::coord(0))}));
  CHECK(hadamard_lower_derivative(e, o1, Point{-1.0}).contains(2.0, 1e-3));
  CHECK(hadamard_lower_derivative(e, o1, Point{1.0}).contains(1.0, 1e-3));
}

TEST_CASE("grsl_hadamard_identity_check: worked examples pass") {
  CHECK(grsl_hadamard_identity_check(vee(), o1).status == Status::kPass);
  CHECK(grsl_hadamard_identity_check(l1_2d(), o2).status == Status::kPass);
  const auto r = grsl_hadamard_identity_check(linear34(), o2);
  CHECK(r.status == Status::kPass);
}

TEST_CASE("local_lipschitz_modulus: worked examples") {
  const auto neg = FunctionSpec::min_of_max_affine(kLine, {MaxAffine{{{{0.25}, 0.0}}}, MaxAffine{{{{-0.25}, 0.0}}}});
  CHECK(local_lipschitz_modulus(neg, o1).contains(0.25, 1e-9));
  const auto lin = local_lipschitz_modulus(linear34(), o2);
  CHECK(lin.certified);
  CHECK(lin.lower.value() == doctest::Approx(5.0));
  const SpaceConfig s{2, Norm::kEll1};
  const auto g = make_random_max_affine(s, 3, 0.3, o2, 4);
  const auto b = local_lipschitz_modulus(perturbation_function(s, PerturbationSpec{g}), o2);
  CHECK(b.upper.value() <= 0.3 + 1e-12);
  CHECK(b.lower.value() <= b.upper.value());
}

TEST_CASE("radius schedule validation") {
  CHECK_THROWS_AS(RadiusSchedule({1.0, 1.5, 14, 4096, 42}).validate(), Error);
  CHECK_THROWS_AS(RadiusSchedule({-1.0, 0.5, 14, 4096, 42}).validate(), Error);
  CHECK_THROWS_AS(RadiusSchedule({1.0, 0.5, 0, 4096, 42}).validate(), Error);
  const RadiusSchedule s{};
  for (std::size_t k = 1; k < s.levels; ++k) CHECK(s.radius(k) < s.radius(k - 1));
}

TEST_CASE("estimators are bitwise deterministic") {
  const auto a = grsl_estimate(l1_2d(), o2), b = grsl_estimate(l1_2d(), o2);
  CHECK(a.lower.value() == b.lower.value());
  CHECK(a.upper.value() == b.upper.value());
  for (std::size_t k = 0; k < a.diagnostics.size(); ++k)
    CHECK(a.diagnostics[k].sampled_inf == b.diagnostics[k].sampled_inf);
}
