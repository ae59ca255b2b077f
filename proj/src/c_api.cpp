#include "rkband/rkband.h"

#include <algorithm>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rkband/classifier.hpp"
#include "rkband/heuristic.hpp"
#include "rkband/io.hpp"
#include "rkband/learning.hpp"
#include "rkband/parallel.hpp"

struct rkb_series_set {
  std::vector<rkband::TimeSeries> series;
  std::optional<std::vector<rkband::Label>> labels;
  std::size_t length = 0;
};

struct rkb_bandset {
  rkband::BandSet bands;
};

struct rkb_model {
  rkband::ClassifierModel model;
};

namespace {

thread_local std::string g_last_error;

rkb_status to_status(rkband::ErrorCode code) {
  using rkband::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidSeries: return RKB_E_INVALID_SERIES;
    case ErrorCode::Dimension: return RKB_E_DIMENSION;
    case ErrorCode::Index: return RKB_E_INDEX;
    case ErrorCode::EvaluationUndefined: return RKB_E_EVALUATION_UNDEFINED;
    case ErrorCode::Configuration: return RKB_E_CONFIGURATION;
    case ErrorCode::ComplexityUnreachable: return RKB_E_COMPLEXITY_UNREACHABLE;
    case ErrorCode::UndefinedAccuracy: return RKB_E_UNDEFINED_ACCURACY;
    case ErrorCode::Parse: return RKB_E_PARSE;
    case ErrorCode::Io: return RKB_E_IO;
  }
  return RKB_E_INTERNAL;
}

rkb_status fail(rkb_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
rkb_status guarded(F&& body) {
  try {
    body();
    return RKB_OK;
  } catch (const rkband::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RKB_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RKB_E_INTERNAL, e.what());
  } catch (...) {
    return fail(RKB_E_INTERNAL, "unknown error");
  }
}

rkband::LabeledDataset as_dataset(const rkb_series_set& set) {
  if (set.series.empty()) throw rkband::Error(rkband::ErrorCode::InvalidSeries, "training set is empty");
  if (!set.labels) throw rkband::Error(rkband::ErrorCode::Parse, "training set carries no labels");
  return rkband::LabeledDataset(set.series, *set.labels);
}

#define RKB_REQUIRE(cond, what) \
  if (!(cond)) return fail(RKB_E_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* rkb_version(void) { return "1.0.0"; }

const char* rkb_last_error(void) { return g_last_error.c_str(); }

const char* rkb_status_name(rkb_status status) {
  switch (status) {
    case RKB_OK: return "ok";
    case RKB_E_INVALID_ARGUMENT: return "invalid argument";
    case RKB_E_INVALID_SERIES: return "invalid series";
    case RKB_E_DIMENSION: return "dimension mismatch";
    case RKB_E_INDEX: return "index out of range";
    case RKB_E_EVALUATION_UNDEFINED: return "evaluation undefined";
    case RKB_E_CONFIGURATION: return "configuration error";
    case RKB_E_COMPLEXITY_UNREACHABLE: return "complexity unreachable";
    case RKB_E_UNDEFINED_ACCURACY: return "accuracy undefined";
    case RKB_E_PARSE: return "parse error";
    case RKB_E_IO: return "i/o error";
    case RKB_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void rkb_set_threads(unsigned threads) { rkband::set_thread_count(threads); }

double rkb_complexity(size_t items, size_t length) { return rkband::complexity(items, length); }

rkb_status rkb_series_set_load(const char* path, rkb_label_mode mode, size_t expected_length,
                               rkb_series_set** out) {
  RKB_REQUIRE(path && out, "path and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    rkband::LabelMode m = rkband::LabelMode::Labeled;
    if (mode == RKB_UNLABELED) m = rkband::LabelMode::Unlabeled;
    if (mode == RKB_DETECT_LABELS) m = rkband::LabelMode::Detect;
    std::optional<std::size_t> expected;
    if (expected_length != 0) expected = expected_length;
    auto file = rkband::read_series_file(path, m, expected);
    auto set = std::make_unique<rkb_series_set>();
    set->length = file.series.empty() ? expected_length : file.series.front().length();
    set->series = std::move(file.series);
    set->labels = std::move(file.labels);
    *out = set.release();
  });
}

rkb_status rkb_series_set_from_arrays(const double* values, size_t count, size_t length,
                                      const int* labels, rkb_series_set** out) {
  RKB_REQUIRE(out, "out must not be NULL");
  RKB_REQUIRE(values || count == 0, "values must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto set = std::make_unique<rkb_series_set>();
    set->length = length;
    for (std::size_t k = 0; k < count; ++k) {
      set->series.emplace_back(std::vector<double>(values + k * length, values + (k + 1) * length));
    }
    if (labels) set->labels = std::vector<rkband::Label>(labels, labels + count);
    *out = set.release();
  });
}

void rkb_series_set_free(rkb_series_set* set) { delete set; }

size_t rkb_series_set_count(const rkb_series_set* set) { return set ? set->series.size() : 0; }

size_t rkb_series_set_length(const rkb_series_set* set) { return set ? set->length : 0; }

int rkb_series_set_is_labeled(const rkb_series_set* set) { return set && set->labels ? 1 : 0; }

rkb_status rkb_series_set_labels(const rkb_series_set* set, int* out) {
  RKB_REQUIRE(set && out, "set and out must not be NULL");
  if (!set->labels) return fail(RKB_E_INVALID_ARGUMENT, "series set has no labels");
  std::copy(set->labels->begin(), set->labels->end(), out);
  return RKB_OK;
}

rkb_status rkb_series_set_values(const rkb_series_set* set, size_t index, double* out) {
  RKB_REQUIRE(set && out, "set and out must not be NULL");
  if (index >= set->series.size()) return fail(RKB_E_INDEX, "series index out of range");
  const auto v = set->series[index].values();
  std::copy(v.begin(), v.end(), out);
  return RKB_OK;
}

rkb_status rkb_series_set_znormalize(rkb_series_set* set) {
  RKB_REQUIRE(set, "set must not be NULL");
  return guarded([&] {
    for (auto& s : set->series) s = rkband::znormalize(s);
  });
}

rkb_status rkb_preprocess(rkb_series_set* train, rkb_series_set* test, double threshold,
                          size_t* new_length, int* halvings) {
  RKB_REQUIRE(train, "train must not be NULL");
  return guarded([&] {
    std::vector<rkband::TimeSeries> queries;
    if (test) queries = test->series;
    auto result = rkband::preprocess(as_dataset(*train), queries, threshold);
    train->series = result.train.all_series();
    train->length = result.length;
    if (test) {
      test->series = std::move(result.test);
      test->length = result.length;
    }
    if (new_length) *new_length = result.length;
    if (halvings) *halvings = result.halvings;
  });
}

rkb_status rkb_bandset_sakoe_chiba(const rkb_series_set* train, int width_percent, rkb_bandset** out) {
  RKB_REQUIRE(train && out, "train and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    const auto data = as_dataset(*train);
    auto bands = rkband::BandSet::uniform(data, rkband::sakoe_chiba(data.series_length(), width_percent));
    *out = new rkb_bandset{std::move(bands)};
  });
}

rkb_status rkb_bandset_load(const char* path, rkb_bandset** out) {
  RKB_REQUIRE(path && out, "path and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = new rkb_bandset{rkband::read_band_file(path)}; });
}

rkb_status rkb_bandset_save(const rkb_bandset* bands, const char* path) {
  RKB_REQUIRE(bands && path, "bands and path must not be NULL");
  return guarded([&] { rkband::write_band_file(path, bands->bands); });
}

void rkb_bandset_free(rkb_bandset* bands) { delete bands; }

size_t rkb_bandset_length(const rkb_bandset* bands) { return bands ? bands->bands.length() : 0; }

size_t rkb_bandset_class_count(const rkb_bandset* bands) {
  return bands ? bands->bands.bands().size() : 0;
}

rkb_status rkb_bandset_widths(const rkb_bandset* bands, int label, int* out) {
  RKB_REQUIRE(bands && out, "bands and out must not be NULL");
  return guarded([&] {
    const auto w = bands->bands.at(label).widths();
    std::copy(w.begin(), w.end(), out);
  });
}

rkb_status rkb_evaluate(const rkb_series_set* train, const rkb_bandset* bands, double* out) {
  RKB_REQUIRE(train && bands && out, "train, bands and out must not be NULL");
  return guarded([&] { *out = rkband::evaluate(as_dataset(*train), bands->bands); });
}

rkb_status rkb_loo_accuracy(const rkb_series_set* train, const rkb_bandset* bands, double* out) {
  RKB_REQUIRE(train && bands && out, "train, bands and out must not be NULL");
  return guarded([&] { *out = rkband::loo_accuracy(as_dataset(*train), bands->bands); });
}

rkb_status rkb_learn(const rkb_series_set* train, const rkb_learn_options* options, rkb_bandset** out,
                     rkb_learn_info* info) {
  RKB_REQUIRE(train && options && out, "train, options and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    const auto data = as_dataset(*train);
    rkband::LearningLog log(options->seed);
    auto result = rkband::learn_best_band(data, options->bound_percent, options->seed, &log);
    if (options->log_path) {
      std::ostringstream text;
      log.write_tsv(text);
      rkband::write_file_atomic(options->log_path, text.str());
    }
    if (info) {
      info->heuristic = result.heuristic;
      info->extraction_heuristic = result.extraction_heuristic;
      info->iterative_heuristic = result.iterative_heuristic;
      info->winner = result.winner == rkband::Learner::Extraction ? RKB_LEARNER_EXTRACTION
                                                                  : RKB_LEARNER_ITERATIVE;
      info->window_percent = result.window_percent;
      info->bound = result.bound;
    }
    *out = new rkb_bandset{std::move(result.bands)};
  });
}

rkb_status rkb_model_create(const rkb_series_set* train, const rkb_bandset* bands, rkb_model** out) {
  RKB_REQUIRE(train && bands && out, "train, bands and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = new rkb_model{rkband::build_model(as_dataset(*train), bands->bands)}; });
}

void rkb_model_free(rkb_model* model) { delete model; }

double rkb_model_accuracy(const rkb_model* model) { return model ? model->model.predicted_accuracy : 0.0; }

rkb_status rkb_model_predict(const rkb_model* model, const rkb_series_set* test, int* out) {
  RKB_REQUIRE(model && test, "model and test must not be NULL");
  RKB_REQUIRE(out || test->series.empty(), "out must not be NULL");
  return guarded([&] {
    const auto labels = model->model.classifier.predict(test->series);
    std::copy(labels.begin(), labels.end(), out);
  });
}

}  // extern "C"
