/* C interface of the slopelab core library. */
#ifndef SLOPELAB_H
#define SLOPELAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef SLOPELAB_BUILDING
#    define SLOPELAB_API __declspec(dllexport)
#  else
#    define SLOPELAB_API __declspec(dllimport)
#  endif
#else
#  define SLOPELAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slopelab_status {
  SLOPELAB_OK = 0,
  SLOPELAB_E_INVALID_ARGUMENT = 1,
  SLOPELAB_E_PARSE = 2,
  SLOPELAB_E_DIMENSION = 3,
  SLOPELAB_E_DOMAIN = 4,
  SLOPELAB_E_UNSUPPORTED = 5,
  SLOPELAB_E_PRECONDITION = 6,
  SLOPELAB_E_INTERNAL = 7
} slopelab_status;

typedef enum slopelab_format { SLOPELAB_FORMAT_JSON = 0, SLOPELAB_FORMAT_MARKDOWN = 1 } slopelab_format;

/* Verdict of a verify run; values double as process exit codes. */
typedef enum slopelab_verdict {
  SLOPELAB_VERDICT_PASS = 0,
  SLOPELAB_VERDICT_FAIL = 1,
  SLOPELAB_VERDICT_UNDECIDED = 3
} slopelab_verdict;

typedef struct slopelab_function slopelab_function;
typedef struct slopelab_text slopelab_text;

typedef struct slopelab_options {
  uint64_t seed;
  double r0;
  double ratio;
  uint32_t levels;
  uint32_t samples_per_level;
  double tol;
  slopelab_format format;
} slopelab_options;

/* Fills defaults: seed 42, r0 1, ratio 0.5, 14 levels, 4096 samples, tol 1e-3, JSON. */
SLOPELAB_API void slopelab_options_init(slopelab_options* opt);

/* Message of the last failed call on this thread; never NULL. */
SLOPELAB_API const char* slopelab_last_error(void);
SLOPELAB_API const char* slopelab_version(void);

SLOPELAB_API slopelab_status slopelab_function_parse(const char* json_text, slopelab_function** out);
SLOPELAB_API slopelab_status slopelab_function_from_corpus(const char* name, slopelab_function** out);
SLOPELAB_API void slopelab_function_free(slopelab_function* f);
SLOPELAB_API size_t slopelab_function_dim(const slopelab_function* f);
/* Writes f(x); +inf and -inf are passed through as IEEE infinities. */
SLOPELAB_API slopelab_status slopelab_function_eval(const slopelab_function* f, const double* x, size_t n, double* value);
SLOPELAB_API slopelab_status slopelab_function_to_json(const slopelab_function* f, slopelab_text** out);
/* The optional "point" member of a function document; *n receives its length (0 when absent). */
SLOPELAB_API slopelab_status slopelab_document_point(const char* json_text, double* buf, size_t cap, size_t* n);

SLOPELAB_API slopelab_status slopelab_analyze(const slopelab_function* f, const double* point, size_t n,
                                              const slopelab_options* opt, slopelab_text** out);
/* Unknown suite names fail with SLOPELAB_E_INVALID_ARGUMENT before any probe runs. */
SLOPELAB_API slopelab_status slopelab_verify(const char* const* suites, size_t count, const slopelab_options* opt,
                                             slopelab_text** out, slopelab_verdict* verdict);
SLOPELAB_API slopelab_status slopelab_corpus_listing(slopelab_text** out);

SLOPELAB_API size_t slopelab_suite_count(void);
SLOPELAB_API const char* slopelab_suite_name(size_t i);
SLOPELAB_API int slopelab_is_suite(const char* name);

SLOPELAB_API const char* slopelab_text_data(const slopelab_text* t);
SLOPELAB_API size_t slopelab_text_size(const slopelab_text* t);
SLOPELAB_API void slopelab_text_free(slopelab_text* t);

#ifdef __cplusplus
}
#endif

#endif
