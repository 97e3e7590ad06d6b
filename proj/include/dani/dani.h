#ifndef DANI_DANI_H
#define DANI_DANI_H

/* C interface to the dani question answering library. All functions
 * return a dani_status; on failure dani_last_error() describes the cause
 * (thread-local, valid until the next call on the same thread). Strings
 * returned through char** are owned by the caller and released with
 * dani_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DANI_BUILDING)
#    define DANI_API __declspec(dllexport)
#  else
#    define DANI_API __declspec(dllimport)
#  endif
#else
#  define DANI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dani_status {
  DANI_OK = 0,
  DANI_E_CONFIG = 1,
  DANI_E_IO = 2,
  DANI_E_PARSE = 3,
  DANI_E_FORMAT = 4,
  DANI_E_FROZEN = 5,
  DANI_E_FETCH = 6,
  DANI_E_INTEGRITY = 7,
  DANI_E_TRAIN_DATA = 8,
  DANI_E_DECODE = 9,
  DANI_E_UNKNOWN_ATTRIBUTE = 10,
  DANI_E_UNRESOLVED = 11,
  DANI_E_NO_PATH = 12,
  DANI_E_INTERNAL = 13
} dani_status;

typedef enum dani_mode { DANI_MODE_SUPERVISED = 0, DANI_MODE_WEAK = 1 } dani_mode;

typedef struct dani_model dani_model;

typedef struct dani_options {
  const char* data_dir;      /* NULL or "": $DANI_DATA_DIR */
  dani_mode mode;
  size_t limit_stories;      /* 0: all training stories */
  int trace;                 /* nonzero: per-question trace lines */
  int allow_weak_any_task;   /* nonzero: weak mode outside task 19 */
} dani_options;

DANI_API void dani_options_init(dani_options* opts);

DANI_API const char* dani_last_error(void);
DANI_API const char* dani_status_name(dani_status status);
DANI_API void dani_string_free(char* s);

/* Data. sha256 may be NULL. */
DANI_API dani_status dani_fetch(const char* url, const char* dest, const char* sha256);
DANI_API dani_status dani_synthesize(const char* dest, uint64_t seed, size_t questions_per_split);

/* Long-term memory. */
DANI_API dani_status dani_model_new(dani_model** out);
DANI_API void dani_model_free(dani_model* model);
DANI_API dani_status dani_model_observe(dani_model* model, const char* const* tokens, size_t n);
DANI_API dani_status dani_model_freeze(dani_model* model);
DANI_API dani_status dani_model_is_frozen(const dani_model* model, int* out);
DANI_API dani_status dani_model_event_count(const dani_model* model, uint64_t* out);
DANI_API dani_status dani_model_weight(const dani_model* model, const char* a, const char* b,
                                       double* out);
/* out[0..3] = a, b, c, d */
DANI_API dani_status dani_model_table(const dani_model* model, const char* a, const char* b,
                                      uint64_t out[4]);
DANI_API dani_status dani_model_serialize(const dani_model* model, char** out);
DANI_API dani_status dani_model_parse(const char* text, dani_model** out);
DANI_API dani_status dani_model_save(const dani_model* model, const char* path);
DANI_API dani_status dani_model_load(const char* path, dani_model** out);
DANI_API int dani_model_equal(const dani_model* a, const dani_model* b);

/* Training and evaluation. */
DANI_API dani_status dani_train(int task, const dani_options* opts, dani_model** out);
/* Writes a one-row report; trace_path may be NULL. error_rate in percent. */
DANI_API dani_status dani_evaluate(int task, const dani_options* opts, const dani_model* model,
                                   const char* report_path, const char* trace_path,
                                   double* error_rate);
/* tasks: "1-20", "3,5,7-9". */
DANI_API dani_status dani_run_suite(const char* tasks, const dani_options* opts,
                                    const char* report_path, double* mean_error_rate);

/* Story graph after all statements of test story `story` (1-based). */
DANI_API dani_status dani_dump_graph(int task, size_t story, const dani_options* opts,
                                     char** out);

#ifdef __cplusplus
}
#endif

#endif /* DANI_DANI_H */
