// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <json.hpp>
#include <string>

#include "slopelab/slopelab.h"

namespace {

std::string take(slopelab_text* t) {
  std::string s(slopelab_text_data(t), slopelab_text_size(t));
  slopelab_text_free(t);
  return s;
}

const char* kVee = R"({"space": {"dim": 1, "norm": "euclidean"},
  "function": {"type": "max_affine", "pieces": [{"a": [1], "b": 0}, {"a": [-2], "b": 0}]},
  "point": [0]})";

}  // namespace

TEST_CASE("version and defaults") {
  CHECK(std::strlen(slopelab_version()) > 0);
  slopelab_options o;
  slopelab_options_init(&o);
  CHECK(o.seed == 42);
  CHECK(o.r0 == 1.0);
  CHECK(o.ratio == 0.5);
  CHECK(o.levels == 14);
  CHECK(o.samples_per_level == 4096);
  CHECK(o.format == SLOPELAB_FORMAT_JSON);
}

TEST_CASE("parse, evaluate and serialize a function") {
  slopelab_function* f = nullptr;
  REQUIRE(slopelab_function_parse(kVee, &f) == SLOPELAB_OK);
  CHECK(slopelab_function_dim(f) == 1);
  const double x = -1.5;
  double v = 0.0;
  CHECK(slopelab_function_eval(f, &x, 1, &v) == SLOPELAB_OK);
  CHECK(v == 3.0);
  const double xy[2] = {1.0, 2.0};
  CHECK(slopelab_function_eval(f, xy, 2, &v) == SLOPELAB_E_DIMENSION);
  CHECK(std::strlen(slopelab_last_error()) > 0);

  slopelab_text* t = nullptr;
  REQUIRE(slopelab_function_to_json(f, &t) == SLOPELAB_OK);
  const std::string text = take(t);
  slopelab_function* g = nullptr;
  REQUIRE(slopelab_function_parse(text.c_str(), &g) == SLOPELAB_OK);
  double w = 0.0;
  CHECK(slopelab_function_eval(g, &x, 1, &w) == SLOPELAB_OK);
  CHECK(w == v);
  slopelab_function_free(g);
  slopelab_function_free(f);
}

TEST_CASE("parse errors map to SLOPELAB_E_PARSE with a located message") {
  slopelab_function* f = nullptr;
  CHECK(slopelab_function_parse("{\n \"space\": [", &f) == SLOPELAB_E_PARSE);
  CHECK(f == nullptr);
  CHECK(std::string(slopelab_last_error()).rfind("line 2, column", 0) == 0);
  CHECK(slopelab_function_parse(nullptr, &f) == SLOPELAB_E_INVALID_ARGUMENT);
  CHECK(slopelab_function_from_corpus("missing", &f) == SLOPELAB_E_INVALID_ARGUMENT);
}

TEST_CASE("document point") {
  double buf[4];
  size_t n = 9;
  CHECK(slopelab_document_point(kVee, buf, 4, &n) == SLOPELAB_OK);
  CHECK(n == 1);
  CHECK(buf[0] == 0.0);
  CHECK(slopelab_document_point(kVee, buf, 0, &n) == SLOPELAB_E_INVALID_ARGUMENT);
}

TEST_CASE("analyze through the C API") {
  slopelab_function* f = nullptr;
  REQUIRE(slopelab_function_from_corpus("linear_3_4", &f) == SLOPELAB_OK);
  slopelab_options o;
  slopelab_options_init(&o);
  const double p[2] = {0.0, 0.0};
  slopelab_text* t = nullptr;
  REQUIRE(slopelab_analyze(f, p, 2, &o, &t) == SLOPELAB_OK);
  const auto doc = nlohmann::json::parse(take(t));
  CHECK(doc["grsl"]["lower"].get<double>() == doctest::Approx(-5.0));
  CHECK(doc["strong_slope"]["lower"].get<double>() == doctest::Approx(5.0));
  CHECK(doc["condition_C"]["verdict"] == "fails");

  o.format = SLOPELAB_FORMAT_MARKDOWN;
  REQUIRE(slopelab_analyze(f, p, 2, &o, &t) == SLOPELAB_OK);
  CHECK(take(t).rfind("#", 0) == 0);

  o.ratio = 2.0;
  CHECK(slopelab_analyze(f, p, 2, &o, &t) == SLOPELAB_E_INVALID_ARGUMENT);
  slopelab_function_free(f);
}

TEST_CASE("verify through the C API is deterministic") {
  slopelab_options o;
  slopelab_options_init(&o);
  const char* suites[] = {"nesting", "hadamard-identity"};
  slopelab_text *a = nullptr, *b = nullptr;
  slopelab_verdict va, vb;
  REQUIRE(slopelab_verify(suites, 2, &o, &a, &va) == SLOPELAB_OK);
  REQUIRE(slopelab_verify(suites, 2, &o, &b, &vb) == SLOPELAB_OK);
  CHECK(va == SLOPELAB_VERDICT_PASS);
  CHECK(take(a) == take(b));

  const char* bad[] = {"nesting", "bogus"};
  CHECK(slopelab_verify(bad, 2, &o, &a, &va) == SLOPELAB_E_INVALID_ARGUMENT);
}

TEST_CASE("suite registry and corpus listing") {
  CHECK(slopelab_suite_count() == 10);
  CHECK(std::string(slopelab_suite_name(0)) == "sharp-equiv");
  CHECK(slopelab_suite_name(99) == nullptr);
  CHECK(slopelab_is_suite("tilt") == 1);
  CHECK(slopelab_is_suite("nope") == 0);
  slopelab_text* t = nullptr;
  REQUIRE(slopelab_corpus_listing(&t) == SLOPELAB_OK);
  CHECK(take(t).find("displacement_0.4: shar=0.6") != std::string::npos);
}

TEST_CASE("null handles are tolerated by free functions") {
  slopelab_function_free(nullptr);
  slopelab_text_free(nullptr);
  CHECK(slopelab_function_dim(nullptr) == 0);
}
