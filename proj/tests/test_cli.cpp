// Runs the slopelab executable as a subprocess and checks exit codes and output bytes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#ifndef SLOPELAB_CLI_PATH
#error "SLOPELAB_CLI_PATH must name the CLI executable"
#endif
#ifndef SLOPELAB_TEST_DIR
#error "SLOPELAB_TEST_DIR must name a scratch directory"
#endif

namespace {

struct Run {
  int rc = -1;
  std::string out;  // stdout and stderr together
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + SLOPELAB_CLI_PATH + std::string(" ") + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string scratch(const std::string& name) { return std::string(SLOPELAB_TEST_DIR) + "/" + name; }

std::string write(const std::string& name, const std::string& text) {
  const std::string path = scratch(name);
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("corpus listing") {
  const Run r = run("corpus");
  CHECK(r.rc == 0);
  CHECK(r.out.find("displacement_0.4: shar=0.6") != std::string::npos);
  CHECK(r.out.find("abs_plus_x: grsl=0, Err=2") != std::string::npos);
  CHECK(r.out.find("quadratic: grsl=0") != std::string::npos);
}

TEST_CASE("analyze a corpus function and a file with an embedded point") {
  Run r = run("analyze --function corpus:vee_1_2 --point 0");
  REQUIRE(r.rc == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["grsl"]["lower"].get<double>() == 1.0);
  CHECK(doc["condition_C"]["verdict"] == "holds");

  const std::string f = write("l1.json", R"({"space": {"dim": 2, "norm": "euclidean"},
    "function": {"type": "max_affine", "pieces": [{"a": [1, 1], "b": 0}, {"a": [1, -1], "b": 0},
                 {"a": [-1, 1], "b": 0}, {"a": [-1, -1], "b": 0}]},
    "point": [0, 0]})");
  r = run("analyze --function " + f);
  REQUIRE(r.rc == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["grsl"]["lower"].get<double>() == doctest::Approx(1.0));

  r = run("analyze --function " + f + " --point 0,0 --format markdown");
  CHECK(r.rc == 0);
  CHECK(r.out.rfind("#", 0) == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").rc == 2);
  CHECK(run("--bogus").rc == 2);
  CHECK(run("analyze --function corpus:vee_1_2").rc == 2);  // no point anywhere
  CHECK(run("analyze --function corpus:no_such --point 0").rc == 2);
  CHECK(run("analyze --function corpus:vee_1_2 --point 0,0").rc == 2);
  CHECK(run("verify --suite no-such-suite").rc == 2);
  CHECK(run("verify --suite nesting --ratio 3").rc == 2);
  CHECK(run("verify --suite nesting --format yaml").rc == 2);

  const std::string bad = write("bad.json", "{\n  \"space\": {\"dim\": 1, \"norm\": \"euclidean\"},\n  \"function\": [\n}");
  const Run r = run("analyze --function " + bad + " --point 0");
  CHECK(r.rc == 2);
  CHECK(r.out.find("line 4, column") != std::string::npos);
}

TEST_CASE("verify output is byte-identical across runs and the seed falls back to SLOPELAB_SEED") {
  const std::string a = scratch("a.json"), b = scratch("b.json"), c = scratch("c.json"), d = scratch("d.json");
  REQUIRE(run("verify --suite superstable,nesting --seed 42 --out " + a).rc == 0);
  REQUIRE(run("verify --suite superstable --suite nesting --seed 42 --out " + b).rc == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());

  REQUIRE(run("verify --suite superstable,nesting --seed 7 --out " + c).rc == 0);
  REQUIRE(run("verify --suite superstable,nesting --out " + d, "SLOPELAB_SEED=7").rc == 0);
  CHECK(slurp(c) == slurp(d));
  CHECK(slurp(c) != slurp(a));
  CHECK(nlohmann::json::parse(slurp(d))["seed"] == 7);
  // an explicit flag wins over the environment
  REQUIRE(run("verify --suite superstable,nesting --seed 42 --out " + d, "SLOPELAB_SEED=7").rc == 0);
  CHECK(slurp(d) == slurp(a));
}

TEST_CASE("verify markdown report") {
  const Run r = run("verify --suite tilt --format markdown");
  CHECK(r.rc == 0);
  CHECK(r.out.find("tilt") != std::string::npos);
}
