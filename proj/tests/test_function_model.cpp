#include <doctest.h>

#include <cmath>

#include "frozen.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/function.hpp"
#include "slopelab/rng.hpp"

using namespace slopelab;

namespace {
const SpaceConfig kLine{1, Norm::kEuclidean};
const SpaceConfig kPlane{2, Norm::kEuclidean};

FunctionSpec vee() { return FunctionSpec::max_affine(kLine, {{{1.0}, 0.0}, {{-2.0}, 0.0}}); }
}  // namespace

TEST_CASE("evaluate: worked examples") {
  CHECK(evaluate(vee(), Point{1.0}).value() == 1.0);
  const auto mm = FunctionSpec::min_of_max_affine(kLine, {MaxAffine{{{{1.0}, 0.0}}}, MaxAffine{{{{-1.0}, 0.0}}}});
  CHECK(evaluate(mm, Point{3.0}).value() == -3.0);
  CHECK(evaluate(FunctionSpec::expression(kPlane, Expression::norm()), Point{3.0, 4.0}).value() == 5.0);
}

TEST_CASE("evaluate rejects a point of the wrong dimension") {
  try {
    (void)evaluate(vee(), Point{1.0, 2.0});
    FAIL("expected a dimension error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }
}

TEST_CASE("extended reals: exp overflow saturates to +inf and +inf absorbs finite terms") {
  const auto big = FunctionSpec::expression(kLine, Expression::exp(Expression::coord(0)));
  CHECK(evaluate(big, Point{1e6}).is_plus_inf());
  const ExtReal s = ExtReal::plus_inf() + ExtReal(-3.0);
  CHECK(s.is_plus_inf());
  CHECK(ExtReal(-kInf) < ExtReal(0.0));
  CHECK(ExtReal(0.0) < ExtReal(kInf));
}

TEST_CASE("lipschitz_constant: worked examples") {
  CHECK(*lipschitz_constant(vee()) == 2.0);
  const auto ell1 = FunctionSpec::max_affine(SpaceConfig{2, Norm::kEll1}, {{{1.0, 1.0}, 0.0}});
  CHECK(*lipschitz_constant(ell1) == 1.0);
  const auto mm = FunctionSpec::min_of_max_affine(kLine, {MaxAffine{{{{3.0}, 0.0}}}, MaxAffine{{{{-1.0}, 0.0}}}});
  CHECK(*lipschitz_constant(mm) == frozen::kLipMinOfMax31);
  CHECK_FALSE(lipschitz_constant(FunctionSpec::expression(kLine, Expression::coord(0))).has_value());
}

TEST_CASE("active_pieces: worked examples (0-based indices)") {
  const MaxAffine f{{{{1.0}, 0.0}, {{-2.0}, 0.0}}};
  CHECK(active_pieces(f, Point{0.0}, 0.0) == std::vector<std::size_t>{0, 1});
  CHECK(active_pieces(f, Point{1.0}, 0.0) == std::vector<std::size_t>{0});
  CHECK(active_pieces(f, Point{1e-12}, 1e-9) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("sublevel_distance: worked examples") {
  const auto abs = FunctionSpec::max_affine(kLine, {{{1.0}, 0.0}, {{-1.0}, 0.0}});
  auto b = sublevel_distance(abs, 0.0, Point{0.7});
  CHECK(b.lower.value() == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(b.upper.value() == doctest::Approx(0.7).epsilon(1e-9));

  const auto band = FunctionSpec::max_affine(kLine, {{{1.0}, -1.0}, {{-1.0}, -1.0}});
  b = sublevel_distance(band, 0.0, Point{3.0});
  CHECK(b.lower.value() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(b.upper.value() == doctest::Approx(2.0).epsilon(1e-6));

  const auto radial = FunctionSpec::expression(kPlane, Expression::norm());
  b = sublevel_distance(radial, 0.5, Point{2.0, 0.0});
  CHECK(b.lower.value() <= b.upper.value());
  CHECK(b.contains(frozen::kRadialSublevelDistance, 1e-6));
  CHECK(b.upper.value() - b.lower.value() < 1e-3);
}

TEST_CASE("sublevel_distance: empty sublevel set gives an infinite upper end") {
  const auto pos = FunctionSpec::max_affine(kLine, {{{0.0}, 1.0}});
  const auto b = sublevel_distance(pos, 0.0, Point{0.0}, GridConfig{0, 1, 1.0, 3});
  CHECK(b.upper.is_plus_inf());
}

TEST_CASE("random max-affine perturbations vanish at the anchor and respect the budget") {
  for (Norm n : {Norm::kEuclidean, Norm::kEll1, Norm::kEllInf}) {
    const SpaceConfig s{3, n};
    SpaceConfig dual = s;
    if (n == Norm::kEll1) dual.norm = Norm::kEllInf;
    if (n == Norm::kEllInf) dual.norm = Norm::kEll1;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Point anchor{0.5, -1.0, 2.0};
      const auto g = make_random_max_affine(s, seed, 0.7, anchor, 1 + seed % 8);
      const PerturbationSpec p{g};
      CHECK(p.evaluate(s, anchor).value() == 0.0);
      for (const auto& a : g.gradients) CHECK(dual.norm_of(a) <= 0.7 * (1 + 1e-12));
      CHECK(p.budget() <= 0.7);
    }
  }
}

TEST_CASE("negative distance cone: value and budget") {
  const PerturbationSpec p{NegDistCone{0.25, Point{1.0, 1.0}}};
  CHECK(p.evaluate(kPlane, Point{1.0, 1.0}).value() == 0.0);
  CHECK(p.evaluate(kPlane, Point{4.0, 5.0}).value() == doctest::Approx(-1.25));
  CHECK(p.budget() == 0.25);
}
