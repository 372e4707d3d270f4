#pragma once

#include <string>
#include <vector>

#include "slopelab/corpus.hpp"
#include "slopelab/json_io.hpp"

namespace slopelab {

enum class Format { kJson, kMarkdown };

/// Rates, sharpness, error bound, subdifferential and condition (C) at one point.
/// `tol` is the threshold above which a certified grsl counts as positive.
json_io::json analyze(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched, double tol);

struct VerifyOutcome {
  json_io::json document;
  Status status = Status::kPass;
};

/// Runs the named suites ("all" expands to every suite) in the given order.
/// Unknown names throw kInvalidArgument before anything runs.
VerifyOutcome verify(const std::vector<std::string>& suites, const VerifyOptions& opt);

std::string render(const json_io::json& doc, Format format);

/// Process exit code of a verify status: 0 pass, 1 fail, 3 undecided only.
int exit_code(Status s);

}  // namespace slopelab
