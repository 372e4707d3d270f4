// Command-line front end. Talks to the library only through slopelab.h.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slopelab/slopelab.h"

namespace {

constexpr int kExitUsage = 2;

struct Common {
  std::string seed;
  double r0 = 1.0;
  double ratio = 0.5;
  unsigned levels = 14;
  unsigned samples = 4096;
  double tol = 1e-3;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed (falls back to $SLOPELAB_SEED, then 42)");
  cmd->add_option("--r0", c.r0, "largest sampling radius")->check(CLI::PositiveNumber);
  cmd->add_option("--ratio", c.ratio, "radius ratio between levels, in (0,1)")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--levels", c.levels, "number of radius levels")->check(CLI::PositiveNumber);
  cmd->add_option("--samples", c.samples, "directions per level")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", c.tol, "agreement tolerance")->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", c.format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
  cmd->add_option("--out", c.out, "write the report here instead of stdout");
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string& text, const char* origin) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used, 10);
    if (used != text.size() || text.front() == '-') throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid seed from ") + origin + ": '" + text + "'");
  }
}

slopelab_options make_options(const Common& c) {
  slopelab_options o;
  slopelab_options_init(&o);
  if (!c.seed.empty()) {
    o.seed = parse_seed(c.seed, "--seed");
  } else if (const char* env = std::getenv("SLOPELAB_SEED"); env && *env) {
    o.seed = parse_seed(env, "SLOPELAB_SEED");
  }
  o.r0 = c.r0;
  o.ratio = c.ratio;
  o.levels = c.levels;
  o.samples_per_level = c.samples;
  o.tol = c.tol;
  o.format = c.format == "markdown" ? SLOPELAB_FORMAT_MARKDOWN : SLOPELAB_FORMAT_JSON;
  return o;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      p.push_back(std::stod(item, &used));
      while (used < item.size() && item[used] == ' ') ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("invalid --point component '" + item + "'");
    }
  }
  if (p.empty()) throw UsageError("--point needs at least one coordinate");
  return p;
}

int emit(const slopelab_text* t, const std::string& path) {
  if (path.empty()) {
    std::fwrite(slopelab_text_data(t), 1, slopelab_text_size(t), stdout);
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  f.write(slopelab_text_data(t), static_cast<std::streamsize>(slopelab_text_size(t)));
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return kExitUsage;
  }
  return 0;
}

int library_error(slopelab_status s) {
  std::cerr << "error: " << slopelab_last_error() << "\n";
  return s == SLOPELAB_E_INTERNAL ? 1 : kExitUsage;
}

int run_analyze(const std::string& function_arg, const std::string& point_arg, const Common& c) {
  const slopelab_options opt = make_options(c);
  slopelab_function* f = nullptr;
  std::string doc;
  slopelab_status s;
  if (function_arg.rfind("corpus:", 0) == 0) {
    s = slopelab_function_from_corpus(function_arg.substr(7).c_str(), &f);
  } else {
    std::ifstream in(function_arg, std::ios::binary);
    if (!in) throw UsageError("cannot read function file " + function_arg);
    doc.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    s = slopelab_function_parse(doc.c_str(), &f);
  }
  if (s != SLOPELAB_OK) return library_error(s);

  std::vector<double> point;
  if (!point_arg.empty()) {
    point = parse_point(point_arg);
  } else if (!doc.empty()) {
    point.resize(slopelab_function_dim(f));
    std::size_t n = 0;
    s = slopelab_document_point(doc.c_str(), point.data(), point.size(), &n);
    if (s != SLOPELAB_OK) {
      slopelab_function_free(f);
      return library_error(s);
    }
    point.resize(n);
  }
  if (point.empty()) {
    slopelab_function_free(f);
    throw UsageError("no point given: pass --point or add a \"point\" member to the function file");
  }

  slopelab_text* report = nullptr;
  s = slopelab_analyze(f, point.data(), point.size(), &opt, &report);
  slopelab_function_free(f);
  if (s != SLOPELAB_OK) return library_error(s);
  const int rc = emit(report, c.out);
  slopelab_text_free(report);
  return rc;
}

int run_verify(const std::vector<std::string>& suites_arg, const Common& c) {
  const slopelab_options opt = make_options(c);
  std::vector<std::string> suites = suites_arg.empty() ? std::vector<std::string>{"all"} : suites_arg;
  for (const auto& name : suites)
    if (name != "all" && !slopelab_is_suite(name.c_str())) throw UsageError("unknown suite '" + name + "'");
  std::vector<const char*> names;
  for (const auto& n : suites) names.push_back(n.c_str());

  slopelab_text* report = nullptr;
  slopelab_verdict verdict = SLOPELAB_VERDICT_PASS;
  const slopelab_status s = slopelab_verify(names.data(), names.size(), &opt, &report, &verdict);
  if (s != SLOPELAB_OK) return library_error(s);
  const int rc = emit(report, c.out);
  slopelab_text_free(report);
  return rc != 0 ? rc : static_cast<int>(verdict);
}

int run_corpus(const std::string& out) {
  slopelab_text* listing = nullptr;
  const slopelab_status s = slopelab_corpus_listing(&listing);
  if (s != SLOPELAB_OK) return library_error(s);
  const int rc = emit(listing, out);
  slopelab_text_free(listing);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rates, subdifferentials and stability probes for nonsmooth functions on R^n"};
  app.require_subcommand(1);

  Common analyze_opts, verify_opts;
  std::string function_arg, point_arg, corpus_out;
  std::vector<std::string> suites;

  auto* analyze = app.add_subcommand("analyze", "rates, subdifferential and condition (C) at one point");
  analyze->add_option("--function", function_arg, "function JSON file, or corpus:NAME")->required();
  analyze->add_option("--point", point_arg, "comma-separated coordinates");
  add_common(analyze, analyze_opts);

  auto* verify = app.add_subcommand("verify", "run probe suites over the built-in corpus");
  verify->add_option("--suite", suites, "suite name or 'all' (repeatable, comma-separated)")->delimiter(',');
  add_common(verify, verify_opts);

  auto* corpus = app.add_subcommand("corpus", "list the built-in functions with reference values");
  corpus->add_option("--out", corpus_out, "write the listing here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(function_arg, point_arg, analyze_opts);
    if (*verify) return run_verify(suites, verify_opts);
    return run_corpus(corpus_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
