#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slopelab/space.hpp"

namespace slopelab {

enum class Status { kPass, kFail, kUndecided };

/// Outcome of a membership or minimality query that sampling may not settle.
enum class Tri { kIn, kOut, kUndecided };

std::string_view status_name(Status s);
std::string_view tri_name(Tri t);

struct Witness {
  std::string label;
  Point point;        // may be empty when the witness is not a point
  std::string note;
};

/// Result of one verification probe. Named values keep insertion order so
/// serialized reports are byte-stable.
struct ProbeReport {
  std::string claim_id;
  std::string claim;  // one-line description of what was checked
  Status status = Status::kPass;
  std::vector<std::pair<std::string, double>> quantitative;
  std::vector<Witness> witnesses;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<std::string> notes;

  void set(std::string name, double v) { quantitative.emplace_back(std::move(name), v); }
  void tolerance(std::string name, double v) { tolerances.emplace_back(std::move(name), v); }
  void note(std::string text) { notes.push_back(std::move(text)); }
  /// Records a violation; the report fails and keeps the witness.
  void fail_with(std::string label, Point point, std::string note);
  /// Downgrades pass to undecided (fail is never downgraded).
  void mark_undecided(std::string reason);
  /// Folds another report's status into this one.
  void absorb(const ProbeReport& other);
};

/// Worst status of a list: fail beats undecided beats pass.
Status combine(const std::vector<ProbeReport>& reports);

}  // namespace slopelab
