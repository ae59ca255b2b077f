/*
 * C interface to the rkband library: 1-NN time series classification under
 * per-class warping bands learned from training data.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an rkb_status; on
 * failure rkb_last_error() describes the problem (per thread, valid until
 * the next failing call on that thread).
 */
#ifndef RKBAND_RKBAND_H
#define RKBAND_RKBAND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RKB_API __declspec(dllexport)
#else
#define RKB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rkb_status {
  RKB_OK = 0,
  RKB_E_INVALID_ARGUMENT = 1,
  RKB_E_INVALID_SERIES = 2,
  RKB_E_DIMENSION = 3,
  RKB_E_INDEX = 4,
  RKB_E_EVALUATION_UNDEFINED = 5,
  RKB_E_CONFIGURATION = 6,
  RKB_E_COMPLEXITY_UNREACHABLE = 7,
  RKB_E_UNDEFINED_ACCURACY = 8,
  RKB_E_PARSE = 9,
  RKB_E_IO = 10,
  RKB_E_INTERNAL = 11
} rkb_status;

typedef enum rkb_label_mode {
  RKB_LABELED = 0,
  RKB_UNLABELED = 1,
  /* lines of `expected_length` tokens are unlabeled, one more means labeled */
  RKB_DETECT_LABELS = 2
} rkb_label_mode;

typedef enum rkb_learner { RKB_LEARNER_EXTRACTION = 0, RKB_LEARNER_ITERATIVE = 1 } rkb_learner;

typedef struct rkb_series_set rkb_series_set;
typedef struct rkb_bandset rkb_bandset;
typedef struct rkb_model rkb_model;

typedef struct rkb_learn_options {
  int bound_percent;    /* 0..100, largest warping window considered */
  uint64_t seed;        /* hill-climbing randomness */
  const char* log_path; /* optional TSV learning log, NULL to skip */
} rkb_learn_options;

typedef struct rkb_learn_info {
  double heuristic;
  double extraction_heuristic;
  double iterative_heuristic;
  rkb_learner winner;
  int window_percent;
  int bound;
} rkb_learn_info;

RKB_API const char* rkb_version(void);
RKB_API const char* rkb_last_error(void);
RKB_API const char* rkb_status_name(rkb_status status);

/* Worker threads for library internals; 0 = hardware concurrency. */
RKB_API void rkb_set_threads(unsigned threads);

RKB_API double rkb_complexity(size_t items, size_t length);

/* ---- series sets (training or test data) ---- */

/* expected_length of 0 means "take it from the first line". */
RKB_API rkb_status rkb_series_set_load(const char* path, rkb_label_mode mode, size_t expected_length,
                                       rkb_series_set** out);
/* values is row-major count x length; labels may be NULL. */
RKB_API rkb_status rkb_series_set_from_arrays(const double* values, size_t count, size_t length,
                                              const int* labels, rkb_series_set** out);
RKB_API void rkb_series_set_free(rkb_series_set* set);
RKB_API size_t rkb_series_set_count(const rkb_series_set* set);
RKB_API size_t rkb_series_set_length(const rkb_series_set* set);
RKB_API int rkb_series_set_is_labeled(const rkb_series_set* set);
/* Copies `count` labels into out. */
RKB_API rkb_status rkb_series_set_labels(const rkb_series_set* set, int* out);
/* Copies the `length` samples of one series into out. */
RKB_API rkb_status rkb_series_set_values(const rkb_series_set* set, size_t index, double* out);
RKB_API rkb_status rkb_series_set_znormalize(rkb_series_set* set);

/* Halves train (and test, if not NULL) in place until complexity <= threshold. */
RKB_API rkb_status rkb_preprocess(rkb_series_set* train, rkb_series_set* test, double threshold,
                                  size_t* new_length, int* halvings);

/* ---- band sets ---- */

RKB_API rkb_status rkb_bandset_sakoe_chiba(const rkb_series_set* train, int width_percent,
                                           rkb_bandset** out);
RKB_API rkb_status rkb_bandset_load(const char* path, rkb_bandset** out);
/* Atomic: the file is replaced only after a complete write. */
RKB_API rkb_status rkb_bandset_save(const rkb_bandset* bands, const char* path);
RKB_API void rkb_bandset_free(rkb_bandset* bands);
RKB_API size_t rkb_bandset_length(const rkb_bandset* bands);
RKB_API size_t rkb_bandset_class_count(const rkb_bandset* bands);
/* Copies the `length` widths of one class band into out. */
RKB_API rkb_status rkb_bandset_widths(const rkb_bandset* bands, int label, int* out);

/* ---- learning and scoring ---- */

RKB_API rkb_status rkb_evaluate(const rkb_series_set* train, const rkb_bandset* bands, double* out);
RKB_API rkb_status rkb_loo_accuracy(const rkb_series_set* train, const rkb_bandset* bands,
                                    double* out);
/* info may be NULL. */
RKB_API rkb_status rkb_learn(const rkb_series_set* train, const rkb_learn_options* options,
                             rkb_bandset** out, rkb_learn_info* info);

/* ---- classification ---- */

/* Copies train and bands; computes the leave-one-out accuracy. */
RKB_API rkb_status rkb_model_create(const rkb_series_set* train, const rkb_bandset* bands,
                                    rkb_model** out);
RKB_API void rkb_model_free(rkb_model* model);
RKB_API double rkb_model_accuracy(const rkb_model* model);
/* Writes one label per test series into out. */
RKB_API rkb_status rkb_model_predict(const rkb_model* model, const rkb_series_set* test, int* out);

#ifdef __cplusplus
}
#endif

#endif /* RKBAND_RKBAND_H */
