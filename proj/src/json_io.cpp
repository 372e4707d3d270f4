#include "slopelab/json_io.hpp"

#include <cmath>
#include <string>

#include "slopelab/errors.hpp"

namespace slopelab::json_io {

namespace {

[[noreturn]] void bad(std::string_view where, const std::string& msg) {
  fail(ErrorCode::kParse, std::string(where.empty() ? "/" : where) + ": " + msg);
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing member \"") + key + "\"");
  return *it;
}

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string child(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

Point vector_from(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of numbers");
  if (j.size() != dim) bad(where, "expected " + std::to_string(dim) + " entries, got " + std::to_string(j.size()));
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(to_real(j[i], child(where, i)));
  return p;
}

json vector_to(ConstVec v) {
  json a = json::array();
  for (double x : v) a.push_back(real(x));
  return a;
}

json pieces_to(const std::vector<AffinePiece>& pieces) {
  json a = json::array();
  for (const auto& p : pieces) a.push_back({{"a", vector_to(p.a)}, {"b", real(p.b)}});
  return a;
}

std::vector<AffinePiece> pieces_from(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.empty()) bad(where, "expected a non-empty array of pieces");
  std::vector<AffinePiece> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = child(where, i);
    out.push_back({vector_from(member(j[i], "a", w), dim, child(w, "a")), to_real(member(j[i], "b", w), child(w, "b"))});
  }
  return out;
}

const char* op_name(ExprOp op) {
  switch (op) {
    case ExprOp::kConst: return "const";
    case ExprOp::kCoord: return "coord";
    case ExprOp::kAdd: return "add";
    case ExprOp::kSub: return "sub";
    case ExprOp::kMul: return "mul";
    case ExprOp::kNeg: return "neg";
    case ExprOp::kAbs: return "abs";
    case ExprOp::kMax: return "max";
    case ExprOp::kMin: return "min";
    case ExprOp::kNorm: return "norm";
    case ExprOp::kExp: return "exp";
    case ExprOp::kScale: return "scale";
    case ExprOp::kDist: return "dist";
  }
  return "?";
}

json node_to(const ExprNode& n) {
  json j{{"op", op_name(n.op)}};
  switch (n.op) {
    case ExprOp::kConst: j["value"] = real(n.value); break;
    case ExprOp::kCoord: j["index"] = n.index; break;
    case ExprOp::kDist: j["center"] = vector_to(n.point); break;
    case ExprOp::kNorm: break;
    case ExprOp::kScale: j["factor"] = real(n.value); [[fallthrough]];
    default: {
      json args = json::array();
      for (const auto& a : n.args) args.push_back(node_to(*a));
      j["args"] = std::move(args);
    }
  }
  return j;
}

Expression node_from(const json& j, std::size_t dim, const std::string& where) {
  const json& op_j = member(j, "op", where);
  if (!op_j.is_string()) bad(child(where, "op"), "expected a string");
  const std::string op = op_j.get<std::string>();
  if (op == "const") return Expression::constant(to_real(member(j, "value", where), child(where, "value")));
  if (op == "coord") {
    const json& i = member(j, "index", where);
    if (!i.is_number_unsigned() || i.get<std::size_t>() >= dim)
      bad(child(where, "index"), "expected a coordinate index below " + std::to_string(dim));
    return Expression::coord(i.get<std::size_t>());
  }
  if (op == "norm") return Expression::norm();
  if (op == "dist") return Expression::dist(vector_from(member(j, "center", where), dim, child(where, "center")));

  const json& args_j = member(j, "args", where);
  if (!args_j.is_array()) bad(child(where, "args"), "expected an array");
  std::vector<Expression> args;
  for (std::size_t i = 0; i < args_j.size(); ++i) args.push_back(node_from(args_j[i], dim, child(child(where, "args"), i)));
  auto arity = [&](std::size_t n) {
    if (args.size() != n) bad(child(where, "args"), op + " takes " + std::to_string(n) + " argument(s)");
  };
  if (op == "add") return Expression::sum(std::move(args));
  if (op == "mul") return Expression::product(std::move(args));
  if (op == "max" || op == "min") {
    if (args.empty()) bad(child(where, "args"), op + " needs at least one argument");
    return op == "max" ? Expression::max(std::move(args)) : Expression::min(std::move(args));
  }
  if (op == "sub") {
    arity(2);
    return Expression::difference(args[0], args[1]);
  }
  if (op == "scale") {
    arity(1);
    return Expression::scale(to_real(member(j, "factor", where), child(where, "factor")), args[0]);
  }
  arity(1);
  if (op == "neg") return Expression::neg(args[0]);
  if (op == "abs") return Expression::abs(args[0]);
  if (op == "exp") return Expression::exp(args[0]);
  bad(child(where, "op"), "unknown operation \"" + op + "\"");
}

FunctionSpec body_from(const json& j, const SpaceConfig& space, const std::string& where) {
  const json& type_j = member(j, "type", where);
  if (!type_j.is_string()) bad(child(where, "type"), "expected a string");
  const std::string type = type_j.get<std::string>();
  if (type == "max_affine")
    return FunctionSpec::max_affine(space, pieces_from(member(j, "pieces", where), space.dim, child(where, "pieces")));
  if (type == "min_of_max_affine") {
    const json& comps = member(j, "components", where);
    const std::string cw = child(where, "components");
    if (!comps.is_array() || comps.empty()) bad(cw, "expected a non-empty array of components");
    std::vector<MaxAffine> out;
    for (std::size_t i = 0; i < comps.size(); ++i)
      out.push_back(MaxAffine{pieces_from(member(comps[i], "pieces", child(cw, i)), space.dim, child(child(cw, i), "pieces"))});
    return FunctionSpec::min_of_max_affine(space, std::move(out));
  }
  if (type == "expression")
    return FunctionSpec::expression(space, node_from(member(j, "ast", where), space.dim, child(where, "ast")));
  if (type == "perturbed_sum") {
    FunctionSpec base = body_from(member(j, "base", where), space, child(where, "base"));
    const std::string pw = child(where, "perturbation");
    const json& pj = member(j, "perturbation", where);
    try {
      return FunctionSpec::perturbed_sum(std::move(base), perturbation_from_json(pj, space));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) throw;
      bad(pw, e.what());
    }
  }
  bad(child(where, "type"), "unknown function type \"" + type + "\"");
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

json real(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

double to_real(const json& j, std::string_view where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  bad(where, "expected a number");
}

json to_json(const SpaceConfig& space) { return {{"dim", space.dim}, {"norm", std::string(norm_name(space.norm))}}; }

json to_json(const Expression& e) { return node_to(e.root()); }

json to_json(const PerturbationSpec& p) {
  return std::visit(
      [](const auto& g) -> json {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, NegDistCone>) {
          return {{"kind", "neg_dist_cone"}, {"eps", real(g.eps)}, {"anchor", vector_to(g.anchor)}};
        } else if constexpr (std::is_same_v<T, RandomMaxAffine>) {
          json grads = json::array();
          for (const auto& a : g.gradients) grads.push_back(vector_to(a));
          return {{"kind", "random_max_affine"}, {"seed", g.seed},           {"budget", real(g.budget)},
                  {"anchor", vector_to(g.anchor)}, {"gradients", std::move(grads)}, {"sign", real(g.sign)}};
        } else {
          json j{{"kind", "expression"}, {"ast", to_json(g.ast)}, {"declared_budget", real(g.declared_budget)}};
          if (g.anchor) j["anchor"] = vector_to(*g.anchor);
          return j;
        }
      },
      p.kind);
}

json function_body(const FunctionSpec& f) {
  return std::visit(
      [](const auto& b) -> json {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, MaxAffine>) {
          return {{"type", "max_affine"}, {"pieces", pieces_to(b.pieces)}};
        } else if constexpr (std::is_same_v<T, MinOfMaxAffine>) {
          json comps = json::array();
          for (const auto& c : b.components) comps.push_back({{"pieces", pieces_to(c.pieces)}});
          return {{"type", "min_of_max_affine"}, {"components", std::move(comps)}};
        } else if constexpr (std::is_same_v<T, Expression>) {
          return {{"type", "expression"}, {"ast", to_json(b)}};
        } else {
          return {{"type", "perturbed_sum"}, {"base", function_body(*b.base)}, {"perturbation", to_json(b.perturbation)}};
        }
      },
      f.body);
}

json to_json(const FunctionSpec& f) { return {{"space", to_json(f.space)}, {"function", function_body(f)}}; }

json to_json(const RateBracket& b) {
  json j{{"lower", real(b.lower.value())},
         {"upper", real(b.upper.value())},
         {"certified", b.certified},
         {"branch", b.branch}};
  if (!b.diagnostics.empty()) {
    json d = json::array();
    for (const auto& l : b.diagnostics)
      d.push_back({{"radius", real(l.radius)},
                   {"sampled_inf", real(l.sampled_inf)},
                   {"sampled_sup", real(l.sampled_sup)},
                   {"samples", l.samples}});
    j["diagnostics"] = std::move(d);
  }
  return j;
}

json to_json(const Polytope& p) {
  json v = json::array();
  for (const auto& x : p.vertices()) v.push_back(vector_to(x));
  return {{"dim", p.dim()}, {"vertices", std::move(v)}};
}

json to_json(const RadiusSchedule& s) {
  return {{"r0", real(s.r0)},
          {"ratio", real(s.ratio)},
          {"levels", s.levels},
          {"samples_per_level", s.samples_per_level},
          {"seed", s.seed}};
}

json to_json(const ProbeReport& r) {
  json q = json::object(), tol = json::object();
  for (const auto& [k, v] : r.quantitative) q[k] = real(v);
  for (const auto& [k, v] : r.tolerances) tol[k] = real(v);
  json w = json::array();
  for (const auto& x : r.witnesses) {
    json item{{"label", x.label}, {"note", x.note}};
    if (!x.point.empty()) item["point"] = vector_to(x.point);
    w.push_back(std::move(item));
  }
  return {{"claim_id", r.claim_id},
          {"claim", r.claim},
          {"status", std::string(status_name(r.status))},
          {"quantitative", std::move(q)},
          {"tolerances", std::move(tol)},
          {"witnesses", std::move(w)},
          {"notes", r.notes}};
}

SpaceConfig space_from_json(const json& j) {
  const json& dim = member(j, "dim", "/space");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) bad("/space/dim", "expected a positive integer");
  SpaceConfig s{dim.get<std::size_t>(), Norm::kEuclidean};
  if (j.contains("norm")) {
    if (!j["norm"].is_string()) bad("/space/norm", "expected a string");
    try {
      s.norm = parse_norm(j["norm"].get<std::string>());
    } catch (const Error& e) {
      bad("/space/norm", e.what());
    }
  }
  return s;
}

Expression expression_from_json(const json& j, std::size_t dim) { return node_from(j, dim, ""); }

PerturbationSpec perturbation_from_json(const json& j, const SpaceConfig& space) {
  const std::string where = "/function/perturbation";
  const json& kind_j = member(j, "kind", where);
  if (!kind_j.is_string()) bad(child(where, "kind"), "expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "neg_dist_cone") {
    const double eps = to_real(member(j, "eps", where), child(where, "eps"));
    if (!(eps > 0.0)) bad(child(where, "eps"), "eps must be positive");
    return PerturbationSpec{NegDistCone{eps, vector_from(member(j, "anchor", where), space.dim, child(where, "anchor"))}};
  }
  if (kind == "random_max_affine") {
    const json& seed = member(j, "seed", where);
    if (!seed.is_number_unsigned()) bad(child(where, "seed"), "expected a non-negative integer");
    const double budget = to_real(member(j, "budget", where), child(where, "budget"));
    if (!(budget > 0.0)) bad(child(where, "budget"), "budget must be positive");
    Point anchor = vector_from(member(j, "anchor", where), space.dim, child(where, "anchor"));
    if (!j.contains("gradients")) {
      std::size_t pieces = 4;
      if (j.contains("pieces")) {
        if (!j["pieces"].is_number_unsigned()) bad(child(where, "pieces"), "expected a positive integer");
        pieces = j["pieces"].get<std::size_t>();
      }
      return PerturbationSpec{make_random_max_affine(space, seed.get<std::uint64_t>(), budget, std::move(anchor), pieces)};
    }
    RandomMaxAffine g;
    g.seed = seed.get<std::uint64_t>();
    g.budget = budget;
    g.anchor = std::move(anchor);
    const json& grads = j["gradients"];
    const std::string gw = child(where, "gradients");
    if (!grads.is_array() || grads.empty()) bad(gw, "expected a non-empty array");
    SpaceConfig dual = space;
    if (space.norm == Norm::kEll1) dual.norm = Norm::kEllInf;
    else if (space.norm == Norm::kEllInf) dual.norm = Norm::kEll1;
    for (std::size_t i = 0; i < grads.size(); ++i) {
      g.gradients.push_back(vector_from(grads[i], space.dim, child(gw, i)));
      if (dual.norm_of(g.gradients.back()) > budget * (1.0 + 1e-12)) bad(child(gw, i), "gradient exceeds the budget");
    }
    if (j.contains("sign")) {
      g.sign = to_real(j["sign"], child(where, "sign"));
      if (g.sign != 1.0 && g.sign != -1.0) bad(child(where, "sign"), "sign must be 1 or -1");
    }
    return PerturbationSpec{std::move(g)};
  }
  if (kind == "expression") {
    ExpressionPerturbation g;
    g.ast = node_from(member(j, "ast", where), space.dim, child(where, "ast"));
    g.declared_budget = to_real(member(j, "declared_budget", where), child(where, "declared_budget"));
    if (!(g.declared_budget > 0.0)) bad(child(where, "declared_budget"), "declared budget must be positive");
    if (j.contains("anchor")) g.anchor = vector_from(j["anchor"], space.dim, child(where, "anchor"));
    return PerturbationSpec{std::move(g)};
  }
  bad(child(where, "kind"), "unknown perturbation kind \"" + kind + "\"");
}

FunctionSpec function_from_json(const json& j) {
  if (!j.is_object()) bad("", "expected an object");
  const SpaceConfig space = space_from_json(member(j, "space", ""));
  return body_from(member(j, "function", ""), space, "/function");
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = line_column(text, byte);
    std::string msg = e.what();
    // keep only the part after nlohmann's "[json.exception.parse_error.101] " prefix
    if (auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
    if (msg.rfind("parse error at line", 0) == 0)
      if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
    fail(ErrorCode::kParse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

FunctionSpec parse_function(std::string_view text) { return function_from_json(parse_text(text)); }

Point parse_point_member(std::string_view text) {
  const json j = parse_text(text);
  if (!j.is_object() || !j.contains("point")) return {};
  const SpaceConfig space = space_from_json(member(j, "space", ""));
  return vector_from(j["point"], space.dim, "/point");
}

}  // namespace slopelab::json_io
