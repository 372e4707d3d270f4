#include "slopelab/analysis.hpp"

#include <cstdio>
#include <sstream>

#include "slopelab/errors.hpp"
#include "slopelab/lab.hpp"
#include "slopelab/subdiff.hpp"

namespace slopelab {

using json_io::json;

namespace {

json vec(ConstVec v) {
  json a = json::array();
  for (double x : v) a.push_back(json_io::real(x));
  return a;
}

json subdifferential_json(const FunctionSpec& f, ConstVec xbar) {
  if (f.is_max_affine())
    return {{"kind", "convex"}, {"polytope", json_io::to_json(convex_subdifferential(f, xbar))}};
  if (f.is_min_of_max_affine() && f.space.dim <= 3) {
    const auto pa = to_piecewise_affine(f);
    const LocalStructure ls = local_structure(*pa, f.space, xbar);
    json sets = json::array();
    for (const auto& grads : ls.active) sets.push_back(json_io::to_json(Polytope::hull(f.space.dim, grads)));
    return {{"kind", "regular"}, {"representation", "intersection of the active component hulls"}, {"sets", std::move(sets)}};
  }
  return nullptr;
}

const char* verdict(const RateBracket& g, double tol) {
  if (g.lower.value() > tol) return "holds";
  if (g.upper.value() <= tol) return "fails";
  return "undecided";
}

std::string num(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
  return buf;
}

std::string point_text(const json& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + num(p[i]);
  return s + ")";
}

void bracket_row(std::ostringstream& os, const std::string& name, const json& b) {
  if (b.is_null()) {
    os << "| " << name << " | n/a | n/a | n/a | n/a |\n";
    return;
  }
  os << "| " << name << " | " << num(b["lower"]) << " | " << num(b["upper"]) << " | "
     << (b["certified"].get<bool>() ? "yes" : "no") << " | " << b["branch"].get<std::string>() << " |\n";
}

std::string render_analysis(const json& d) {
  std::ostringstream os;
  os << "# Analysis\n\n";
  os << "- point: " << point_text(d["point"]) << "\n";
  os << "- value: " << num(d["value"]) << "\n";
  os << "- norm: " << d["function"]["space"]["norm"].get<std::string>() << "\n\n";
  os << "| quantity | lower | upper | certified | branch |\n|---|---|---|---|---|\n";
  for (const char* k : {"grsl", "strong_slope", "shar", "Err", "lipschitz_modulus"}) bracket_row(os, k, d[k]);
  const json& c = d["condition_C"];
  os << "\nCondition (C): " << c["verdict"].get<std::string>() << " (threshold " << num(c["threshold"])
     << ", certified " << (c["certified"].get<bool>() ? "yes" : "no") << ")\n";
  if (!d["subdifferential"].is_null()) {
    const json& s = d["subdifferential"];
    os << "\nSubdifferential (" << s["kind"].get<std::string>() << "):\n";
    auto list = [&](const json& poly) {
      std::string out;
      for (const auto& v : poly["vertices"]) out += (out.empty() ? "" : ", ") + point_text(v);
      return out;
    };
    if (s.contains("polytope")) os << "- vertices: " << list(s["polytope"]) << "\n";
    else
      for (const auto& p : s["sets"]) os << "- active component hull: " << list(p) << "\n";
  }
  if (!d["warnings"].empty()) {
    os << "\nWarnings:\n";
    for (const auto& w : d["warnings"]) os << "- " << w.get<std::string>() << "\n";
  }
  return os.str();
}

std::string render_verify(const json& d) {
  std::ostringstream os;
  const json& s = d["schedule"];
  os << "# Verification report\n\n";
  os << "- status: " << d["status"].get<std::string>() << "\n";
  os << "- seed: " << num(d["seed"]) << "\n";
  os << "- schedule: r0=" << num(s["r0"]) << ", ratio=" << num(s["ratio"]) << ", levels=" << num(s["levels"])
     << ", samples=" << num(s["samples_per_level"]) << "\n";
  os << "- reference tolerance: " << num(d["tol"]) << "\n";
  for (const auto& suite : d["suites"]) {
    const json& c = suite["counts"];
    os << "\n## " << suite["name"].get<std::string>() << ": " << suite["status"].get<std::string>() << " ("
       << num(c["pass"]) << " pass, " << num(c["fail"]) << " fail, " << num(c["undecided"]) << " undecided)\n\n";
    os << "| probe | status | claim checked | values |\n|---|---|---|---|\n";
    for (const auto& r : suite["reports"]) {
      std::string vals;
      for (const auto& [k, v] : r["quantitative"].items()) vals += (vals.empty() ? "" : ", ") + k + "=" + num(v);
      os << "| " << r["claim_id"].get<std::string>() << " | " << r["status"].get<std::string>() << " | "
         << r["claim"].get<std::string>() << " | " << vals << " |\n";
    }
    for (const auto& r : suite["reports"]) {
      if (r["witnesses"].empty() || r["status"] != "fail") continue;
      os << "\nWitnesses for " << r["claim_id"].get<std::string>() << ":\n";
      for (const auto& w : r["witnesses"])
        os << "- " << w["label"].get<std::string>() << (w.contains("point") ? " at " + point_text(w["point"]) : "")
           << ": " << w["note"].get<std::string>() << "\n";
    }
  }
  return os.str();
}

}  // namespace

json analyze(const FunctionSpec& f, ConstVec xbar, const RadiusSchedule& sched, double tol) {
  f.space.check_point(xbar, "point");
  sched.validate();
  json warnings = json::array();
  const ExtReal fbar = evaluate(f, xbar);
  if (!fbar.is_finite()) fail(ErrorCode::kDomain, "f is not finite at the point");

  const RateBracket g = grsl_exact(f, xbar, sched);
  if (!g.certified) warnings.push_back("exact path unavailable; grsl is a sampled bracket");
  const RateBracket slope = strong_slope(f, xbar, sched);
  const RateBracket shar = sharpness_modulus(f, xbar, sched);
  json err = nullptr;
  try {
    err = json_io::to_json(error_bound_modulus(shifted(f, fbar.value()), xbar, sched));
  } catch (const Error& e) {
    warnings.push_back(std::string("error bound modulus skipped: ") + e.what());
  }
  json lip = nullptr;
  try {
    lip = json_io::to_json(local_lipschitz_modulus(f, xbar, sched));
  } catch (const Error& e) {
    warnings.push_back(std::string("local Lipschitz modulus skipped: ") + e.what());
  }

  json doc;
  doc["command"] = "analyze";
  doc["function"] = json_io::to_json(f);
  doc["point"] = vec(xbar);
  doc["value"] = json_io::real(fbar.value());
  doc["schedule"] = json_io::to_json(sched);
  doc["grsl"] = json_io::to_json(g);
  doc["strong_slope"] = json_io::to_json(slope);
  doc["shar"] = json_io::to_json(shar);
  doc["Err"] = std::move(err);
  doc["lipschitz_modulus"] = std::move(lip);
  doc["subdifferential"] = subdifferential_json(f, xbar);
  doc["condition_C"] = {{"verdict", verdict(g, tol)}, {"holds", g.lower.value() > tol}, {"certified", g.certified},
                        {"threshold", json_io::real(tol)}};
  doc["warnings"] = std::move(warnings);
  return doc;
}

VerifyOutcome verify(const std::vector<std::string>& suites, const VerifyOptions& opt) {
  std::vector<std::string> names;
  for (const auto& s : suites) {
    if (s == "all") {
      names.insert(names.end(), suite_names().begin(), suite_names().end());
    } else if (is_suite(s)) {
      names.push_back(s);
    } else {
      fail(ErrorCode::kInvalidArgument, "unknown suite: " + s);
    }
  }
  if (names.empty()) fail(ErrorCode::kInvalidArgument, "no suite selected");
  opt.sched.validate();

  RadiusSchedule shown = opt.sched;
  shown.seed = opt.seed;
  VerifyOutcome out;
  json doc;
  doc["command"] = "verify";
  doc["seed"] = opt.seed;
  doc["schedule"] = json_io::to_json(shown);
  doc["tol"] = json_io::real(opt.tol);
  json list = json::array();
  std::vector<ProbeReport> everything;
  std::size_t total[3] = {0, 0, 0};
  for (const auto& name : names) {
    const auto reports = run_suite(name, opt);
    std::size_t counts[3] = {0, 0, 0};
    json rs = json::array();
    for (const auto& r : reports) {
      ++counts[static_cast<int>(r.status)];
      rs.push_back(json_io::to_json(r));
    }
    for (int i = 0; i < 3; ++i) total[i] += counts[i];
    everything.insert(everything.end(), reports.begin(), reports.end());
    list.push_back({{"name", name},
                    {"status", std::string(status_name(combine(reports)))},
                    {"counts", {{"pass", counts[0]}, {"fail", counts[1]}, {"undecided", counts[2]}}},
                    {"reports", std::move(rs)}});
  }
  out.status = combine(everything);
  doc["status"] = std::string(status_name(out.status));
  doc["counts"] = {{"pass", total[0]}, {"fail", total[1]}, {"undecided", total[2]}};
  doc["suites"] = std::move(list);
  out.document = std::move(doc);
  return out;
}

std::string render(const json& doc, Format format) {
  if (format == Format::kJson) return doc.dump(2) + "\n";
  const std::string cmd = doc.value("command", "");
  if (cmd == "analyze") return render_analysis(doc);
  if (cmd == "verify") return render_verify(doc);
  fail(ErrorCode::kInvalidArgument, "document has no markdown rendering");
}

int exit_code(Status s) {
  switch (s) {
    case Status::kPass: return 0;
    case Status::kFail: return 1;
    case Status::kUndecided: return 3;
  }
  return 1;
}

}  // namespace slopelab
