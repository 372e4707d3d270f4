#pragma once

#include <cstdint>
#include <vector>

#include "slopelab/function.hpp"
#include "slopelab/rates.hpp"
#include "slopelab/report.hpp"

namespace slopelab {

/// Perturbations sharing an anchor and a certified Lipschitz budget.
struct PerturbationBatch {
  std::size_t count = 0;
  double budget = 0.0;
  std::uint64_t seed = 0;
  std::vector<PerturbationSpec> specs;

  /// `count` random max-affine perturbations vanishing at `anchor`.
  static PerturbationBatch random(const SpaceConfig& space, std::size_t count, double budget, std::uint64_t seed,
                                  const Point& anchor);
  /// Checks every perturbation against the budget and the anchor value 0.
  void validate(const SpaceConfig& space, ConstVec anchor) const;
};

/// Sharpness modulus: the grsl bracket clipped below at 0, branch "sharp",
/// "not-sharp" or "undecided".
RateBracket sharpness_modulus(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched = {});

/// Direct sigma-grid search for the best linear growth rate, compared with grsl.
ProbeReport sharp_equivalence_check(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched = {});

ProbeReport superstability_probe(const FunctionSpec& f, ConstVec xbar, const PerturbationBatch& batch,
                                 const RadiusSchedule& sched = {});

RateBracket error_bound_modulus(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched = {},
                                const GridConfig& grid = {});

ProbeReport error_bound_checks(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched = {},
                               const GridConfig& grid = {});

ProbeReport error_bound_stability_probe(const FunctionSpec& f, ConstVec xbar, const PerturbationBatch& batch,
                                        const RadiusSchedule& sched = {}, const GridConfig& grid = {});

struct Box {
  Point lo;
  Point hi;
};

/// Sufficient condition for existence of a minimizer, checked on a compact box.
/// Only the implication hypothesis => minimizer found is asserted.
ProbeReport existence_condition_check(const FunctionSpec& f, const Box& box, double sigma, std::size_t sample_count,
                                      std::uint64_t seed = 42);

/// Argmin over the ball B(xbar, delta) of the tilted function must be {xbar}.
ProbeReport tilt_stability_probe(const FunctionSpec& f, ConstVec xbar, double delta, double tilt_radius,
                                 std::size_t count = 32, std::uint64_t seed = 42);

/// Grid argmin over B(xbar, delta) of f(x) - <xstar, x - xbar>; diagnostic use.
Point tilt_argmin(const FunctionSpec& f, ConstVec xbar, ConstVec xstar, double delta);

}  // namespace slopelab
