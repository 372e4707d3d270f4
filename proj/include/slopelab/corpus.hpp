#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slopelab/function.hpp"
#include "slopelab/lab.hpp"
#include "slopelab/report.hpp"

namespace slopelab {

/// A built-in test function with its base point and hand-derived reference values.
struct CorpusEntry {
  std::string name;
  std::string family;  // convex-pa, nonconvex-pa, smooth, radial, displacement
  FunctionSpec f;
  Point xbar;
  std::vector<std::pair<std::string, double>> reference;  // listed in this order
  std::string origin;                                     // how the reference values were obtained

  bool polyhedral() const { return f.is_max_affine() || f.is_min_of_max_affine(); }
  double ref(const std::string& key) const;  // throws kInvalidArgument when absent
};

/// The twelve corpus functions, in fixed order.
const std::vector<CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(const std::string& name);

/// Displacement function (1 - alpha)|x| of the contraction x -> alpha x on the line.
FunctionSpec displacement(double alpha);

/// One line per corpus function: "name: key=value, key=value (family; origin)".
std::string corpus_listing();

struct VerifyOptions {
  std::uint64_t seed = 42;
  RadiusSchedule sched{};
  double tol = 1e-3;  // agreement tolerance against corpus reference values
};

/// Names accepted by run_suite, in report order.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one probe suite over the corpus. Every report carries the corpus
/// function name in its claim_id suffix ("sharp-equiv/abs").
std::vector<ProbeReport> run_suite(const std::string& name, const VerifyOptions& opt);

}  // namespace slopelab
