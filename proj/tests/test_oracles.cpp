// Oracle outputs frozen before the library paths were compared against them.
// The library tests in the other files assert against these constants.
#include <doctest.h>

#include "frozen.hpp"
#include "oracles.hpp"

using namespace oracle;

namespace {

Fn maxaff(std::vector<Piece> p) {
  return [p](const Vec& x) { return max_affine(p, x); };
}
Fn minmax(std::vector<std::vector<Piece>> c) {
  return [c](const Vec& x) { return min_of_max(c, x); };
}

}  // namespace

TEST_CASE("sweep oracle reproduces the frozen corpus rates") {
  CHECK(sweep_grsl(maxaff({{{1}, 0}, {{-1}, 0}}), {0}) == doctest::Approx(frozen::kGrslAbs).epsilon(1e-12));
  CHECK(sweep_grsl(maxaff({{{1}, 0}, {{-2}, 0}}), {0}) == doctest::Approx(frozen::kGrslVee).epsilon(1e-12));
  CHECK(sweep_grsl(maxaff({{{0.6}, 0}, {{-0.6}, 0}}), {0}) == doctest::Approx(frozen::kGrslDisplacement04).epsilon(1e-9));
  CHECK(sweep_grsl(maxaff({{{2}, 0}, {{0}, 0}}), {0}) == doctest::Approx(0.0));
  CHECK(sweep_grsl(minmax({{{{1}, 0}}, {{{-1}, 0}}}), {0}) == doctest::Approx(-1.0));
  CHECK(sweep_grsl(minmax({{{{1}, -1}, {{-1}, 1}}, {{{1}, 1}, {{-1}, -1}}}), {1}) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sweep_grsl(maxaff({{{1, 1}, 0}, {{1, -1}, 0}, {{-1, 1}, 0}, {{-1, -1}, 0}}), {0, 0}) ==
        doctest::Approx(frozen::kGrslL1).epsilon(1e-9));
  CHECK(sweep_grsl(maxaff({{{3, 4}, 0}}), {0, 0}) == doctest::Approx(frozen::kGrslLinear34).epsilon(1e-9));
}

TEST_CASE("cell oracle agrees with the sweep oracle on the 2-d corpus") {
  std::vector<Piece> hex;
  for (int k = 0; k < 6; ++k) hex.push_back({{std::cos(k * kPi / 3), std::sin(k * kPi / 3)}, 0});
  const std::vector<std::vector<Piece>> cones{{{{1, 0}, 0}, {{-1, 0}, 0}, {{0, 2}, 0}, {{0, -2}, 0}},
                                              {{{2, 0}, 0}, {{-2, 0}, 0}, {{0, 1}, 0}, {{0, -1}, 0}}};
  CHECK(cell_grsl({hex}, {0, 0}) == doctest::Approx(frozen::kGrslHexagon).epsilon(1e-12));
  CHECK(cell_grsl(cones, {0, 0}) == doctest::Approx(frozen::kGrslMinOfCones).epsilon(1e-12));
  // the sweep resolves the kink of min_of_cones only to the angular step
  CHECK(std::abs(sweep_grsl(minmax(cones), {0, 0}) - frozen::kGrslMinOfCones) < 1e-5);
  CHECK(sweep_grsl(maxaff(hex), {0, 0}) == doctest::Approx(frozen::kGrslHexagon).epsilon(1e-9));
}

TEST_CASE("3-d facet oracle on a cube of gradients and an off-origin triangle") {
  std::vector<Vec> cube;
  for (double a : {1.0, -1.0})
    for (double b : {1.0, -1.0})
      for (double c : {1.0, -1.0}) cube.push_back({a, b, c});
  CHECK(min_support_3d(cube) == doctest::Approx(1.0));
  CHECK(min_support_3d({{1, 0, 0}, {1, 1, 0}, {1, 0, 1}}) == doctest::Approx(-1.0));
  CHECK(min_support_3d({{1, 1, 1}, {-1, -1, -1}}) == doctest::Approx(0.0));
}

TEST_CASE("grid oracles: Lipschitz quotient, sigma grid, sublevel distance, error quotient") {
  CHECK(grid_lipschitz_1d(minmax({{{{3}, 0}}, {{{-1}, 0}}}), -5, 5, 10001) == doctest::Approx(frozen::kLipMinOfMax31));
  CHECK(sigma_grid_1d(maxaff({{{1}, 0}, {{-2}, 0}}), 0) == doctest::Approx(frozen::kSharVee));
  CHECK(sigma_grid_1d(maxaff({{{0.6}, 0}, {{-0.6}, 0}}), 0) == doctest::Approx(frozen::kGrslDisplacement04));
  CHECK(sigma_grid_1d([](const Vec& x) { return x[0] * x[0]; }, 0) == 0.0);
  CHECK(grid_sublevel_distance_2d([](const Vec& x) { return len(x); }, 0.5, {2, 0}, 2.0, 801) ==
        doctest::Approx(frozen::kRadialSublevelDistance));
  CHECK(err_quotient_1d(maxaff({{{1}, 0}, {{-1}, 0}}), 0) == doctest::Approx(frozen::kErrAbs));
  CHECK(err_quotient_1d(maxaff({{{1}, 0}, {{-2}, 0}}), 0) == doctest::Approx(frozen::kErrVee));
  CHECK(err_quotient_1d(maxaff({{{2}, 0}, {{0}, 0}}), 0) == doctest::Approx(frozen::kErrAbsPlusX));
  CHECK(err_quotient_1d([](const Vec& x) { return x[0] * x[0]; }, 0) < 2e-4);
}
