#pragma once

#include <cstdint>
#include <optional>

#include "slopelab/bracket.hpp"
#include "slopelab/function.hpp"
#include "slopelab/report.hpp"

namespace slopelab {

/// Geometric radius schedule r_k = r0 * ratio^k, k = 0..levels-1.
struct RadiusSchedule {
  double r0 = 1.0;
  double ratio = 0.5;
  std::size_t levels = 14;
  std::size_t samples_per_level = 4096;
  std::uint64_t seed = 42;

  void validate() const;
  double radius(std::size_t k) const;
};

/// Exact descent data of a polyhedral function at xbar: the minimal directional
/// derivative over the unit sphere and a direction attaining it.
struct ExactDescent {
  double value = 0.0;
  Point direction;
  LocalStructure local;
};

/// Exact path: f polyhedral (possibly a perturbed sum with polyhedral parts) and
/// dim <= 3. nullopt otherwise.
std::optional<ExactDescent> exact_descent(const FunctionSpec& f, ConstVec xbar);

/// Steepest descent rate. Certified on the exact path; otherwise the sampled
/// bracket of grsl_estimate with certified = false and branch "estimate".
RateBracket grsl_exact(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched = {});

RateBracket grsl_estimate(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched = {});

RateBracket strong_slope(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched = {});

RateBracket hadamard_lower_derivative(const FunctionSpec& f, ConstVec xbar, ConstVec u,
                                      const RadiusSchedule& sched = {});

RateBracket local_lipschitz_modulus(const FunctionSpec& g, ConstVec xbar, const RadiusSchedule& sched = {});

/// Compares the steepest descent rate with the minimum of the Hadamard lower
/// derivative over the unit sphere.
ProbeReport grsl_hadamard_identity_check(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched = {});

}  // namespace slopelab
