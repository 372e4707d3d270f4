#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "slopelab/bracket.hpp"
#include "slopelab/function.hpp"
#include "slopelab/polytope.hpp"
#include "slopelab/rates.hpp"
#include "slopelab/report.hpp"

namespace slopelab::json_io {

using json = nlohmann::ordered_json;

// Non-finite reals have no JSON literal; they travel as the strings "inf", "-inf".
json real(double v);
double to_real(const json& j, std::string_view where);

json to_json(const SpaceConfig& space);
json to_json(const Expression& e);
json to_json(const PerturbationSpec& p);
json function_body(const FunctionSpec& f);
/// {"space": ..., "function": ...}
json to_json(const FunctionSpec& f);
json to_json(const RateBracket& b);
json to_json(const Polytope& p);
json to_json(const RadiusSchedule& s);
json to_json(const ProbeReport& r);

SpaceConfig space_from_json(const json& j);
Expression expression_from_json(const json& j, std::size_t dim);
PerturbationSpec perturbation_from_json(const json& j, const SpaceConfig& space);
FunctionSpec function_from_json(const json& j);

/// Parses a function document. Syntax errors report "line L, column C"; schema
/// errors report the JSON pointer of the offending field. Both throw kParse.
FunctionSpec parse_function(std::string_view text);

/// Same document shape, but only the optional "point" member; empty when absent.
Point parse_point_member(std::string_view text);

/// Parses the text to JSON, mapping syntax errors to kParse with line and column.
json parse_text(std::string_view text);

}  // namespace slopelab::json_io
