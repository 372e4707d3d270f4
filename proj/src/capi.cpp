#include "slopelab/slopelab.h"

#include <exception>
#include <new>
#include <string>

#include "slopelab/analysis.hpp"
#include "slopelab/corpus.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/json_io.hpp"

struct slopelab_function {
  slopelab::FunctionSpec spec;
};

struct slopelab_text {
  std::string data;
};

namespace {

thread_local std::string g_last_error;

slopelab_status record(slopelab_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class Body>
slopelab_status guarded(Body body) {
  try {
    g_last_error.clear();
    body();
    return SLOPELAB_OK;
  } catch (const slopelab::Error& e) {
    return record(static_cast<slopelab_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return record(SLOPELAB_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(SLOPELAB_E_INTERNAL, e.what());
  }
}

void need(const void* p, const char* name) {
  if (!p) slopelab::fail(slopelab::ErrorCode::kInvalidArgument, std::string(name) + " is NULL");
}

slopelab::VerifyOptions to_options(const slopelab_options* opt) {
  slopelab_options o;
  slopelab_options_init(&o);
  if (opt) o = *opt;
  slopelab::VerifyOptions v;
  v.seed = o.seed;
  v.sched = {o.r0, o.ratio, o.levels, o.samples_per_level, o.seed};
  v.tol = o.tol;
  if (!(v.tol >= 0.0)) slopelab::fail(slopelab::ErrorCode::kInvalidArgument, "tolerance must be non-negative");
  return v;
}

slopelab::Format to_format(const slopelab_options* opt) {
  return (opt && opt->format == SLOPELAB_FORMAT_MARKDOWN) ? slopelab::Format::kMarkdown : slopelab::Format::kJson;
}

slopelab_text* text(std::string s) { return new slopelab_text{std::move(s)}; }

}  // namespace

extern "C" {

void slopelab_options_init(slopelab_options* opt) {
  if (!opt) return;
  opt->seed = 42;
  opt->r0 = 1.0;
  opt->ratio = 0.5;
  opt->levels = 14;
  opt->samples_per_level = 4096;
  opt->tol = 1e-3;
  opt->format = SLOPELAB_FORMAT_JSON;
}

const char* slopelab_last_error(void) { return g_last_error.c_str(); }

const char* slopelab_version(void) { return "0.1.0"; }

slopelab_status slopelab_function_parse(const char* json_text, slopelab_function** out) {
  return guarded([&] {
    need(json_text, "json_text");
    need(out, "out");
    *out = new slopelab_function{slopelab::json_io::parse_function(json_text)};
  });
}

slopelab_status slopelab_function_from_corpus(const char* name, slopelab_function** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new slopelab_function{slopelab::corpus_entry(name).f};
  });
}

void slopelab_function_free(slopelab_function* f) { delete f; }

size_t slopelab_function_dim(const slopelab_function* f) { return f ? f->spec.space.dim : 0; }

slopelab_status slopelab_function_eval(const slopelab_function* f, const double* x, size_t n, double* value) {
  return guarded([&] {
    need(f, "function");
    need(x, "x");
    need(value, "value");
    *value = slopelab::evaluate(f->spec, slopelab::ConstVec(x, n)).value();
  });
}

slopelab_status slopelab_function_to_json(const slopelab_function* f, slopelab_text** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = text(slopelab::json_io::to_json(f->spec).dump(2) + "\n");
  });
}

slopelab_status slopelab_document_point(const char* json_text, double* buf, size_t cap, size_t* n) {
  return guarded([&] {
    need(json_text, "json_text");
    need(n, "n");
    const auto p = slopelab::json_io::parse_point_member(json_text);
    *n = p.size();
    if (p.size() > cap) slopelab::fail(slopelab::ErrorCode::kInvalidArgument, "point buffer too small");
    for (std::size_t i = 0; i < p.size(); ++i) buf[i] = p[i];
  });
}

slopelab_status slopelab_analyze(const slopelab_function* f, const double* point, size_t n,
                                 const slopelab_options* opt, slopelab_text** out) {
  return guarded([&] {
    need(f, "function");
    need(point, "point");
    need(out, "out");
    const auto v = to_options(opt);
    const auto doc = slopelab::analyze(f->spec, slopelab::ConstVec(point, n), v.sched, v.tol);
    *out = text(slopelab::render(doc, to_format(opt)));
  });
}

slopelab_status slopelab_verify(const char* const* suites, size_t count, const slopelab_options* opt,
                                slopelab_text** out, slopelab_verdict* verdict) {
  return guarded([&] {
    need(out, "out");
    if (count > 0) need(suites, "suites");
    std::vector<std::string> names;
    for (size_t i = 0; i < count; ++i) {
      need(suites[i], "suite name");
      names.emplace_back(suites[i]);
    }
    const auto result = slopelab::verify(names, to_options(opt));
    *out = text(slopelab::render(result.document, to_format(opt)));
    if (verdict) *verdict = static_cast<slopelab_verdict>(slopelab::exit_code(result.status));
  });
}

slopelab_status slopelab_corpus_listing(slopelab_text** out) {
  return guarded([&] {
    need(out, "out");
    *out = text(slopelab::corpus_listing());
  });
}

size_t slopelab_suite_count(void) { return slopelab::suite_names().size(); }

const char* slopelab_suite_name(size_t i) {
  const auto& names = slopelab::suite_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

int slopelab_is_suite(const char* name) { return name && slopelab::is_suite(name) ? 1 : 0; }

const char* slopelab_text_data(const slopelab_text* t) { return t ? t->data.c_str() : ""; }

size_t slopelab_text_size(const slopelab_text* t) { return t ? t->data.size() : 0; }

void slopelab_text_free(slopelab_text* t) { delete t; }

}  // extern "C"
