#include "slopelab/report.hpp"

namespace slopelab {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kUndecided: return "undecided";
  }
  return "undecided";
}

std::string_view tri_name(Tri t) {
  switch (t) {
    case Tri::kIn: return "in";
    case Tri::kOut: return "out";
    case Tri::kUndecided: return "undecided";
  }
  return "undecided";
}

void ProbeReport::fail_with(std::string label, Point point, std::string text) {
  status = Status::kFail;
  witnesses.push_back({std::move(label), std::move(point), std::move(text)});
}

void ProbeReport::mark_undecided(std::string reason) {
  if (status == Status::kPass) status = Status::kUndecided;
  notes.push_back(std::move(reason));
}

void ProbeReport::absorb(const ProbeReport& other) {
  if (other.status == Status::kFail) status = Status::kFail;
  else if (other.status == Status::kUndecided && status == Status::kPass) status = Status::kUndecided;
}

Status combine(const std::vector<ProbeReport>& reports) {
  Status s = Status::kPass;
  for (const auto& r : reports) {
    if (r.status == Status::kFail) return Status::kFail;
    if (r.status == Status::kUndecided) s = Status::kUndecided;
  }
  return s;
}

}  // namespace slopelab
