// rkband-cli: learn per-class warping bands, evaluate them, and classify
// time series with banded-DTW 1-NN. Links only the C interface.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "rkband/rkband.h"

namespace {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kDataError = 2,
  kUsage = 64,
  kIncompatible = 65,
};

struct RunConfig {
  std::string train_path;
  std::string test_path;
  std::string band_in;
  std::string band_out;
  std::string log_path;
  std::string predictions_path;
  std::optional<int> sc_width;
  double complexity_threshold = 9.0;
  int bound_percent = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool no_normalize = false;
};

/// Thrown by the helpers below; carries the process exit code.
struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(rkb_status status) {
  switch (status) {
    case RKB_E_PARSE:
    case RKB_E_IO:
    case RKB_E_INVALID_SERIES:
    case RKB_E_DIMENSION:
    case RKB_E_EVALUATION_UNDEFINED:
    case RKB_E_UNDEFINED_ACCURACY:
      return kDataError;
    case RKB_E_CONFIGURATION:
      return kIncompatible;
    case RKB_E_COMPLEXITY_UNREACHABLE:
      return kUsage;
    default:
      return kInternal;
  }
}

void check(rkb_status status) {
  if (status != RKB_OK) throw Failure{exit_code_for(status), rkb_last_error()};
}

struct SetDeleter {
  void operator()(rkb_series_set* p) const { rkb_series_set_free(p); }
};
struct BandDeleter {
  void operator()(rkb_bandset* p) const { rkb_bandset_free(p); }
};
struct ModelDeleter {
  void operator()(rkb_model* p) const { rkb_model_free(p); }
};
using SeriesSet = std::unique_ptr<rkb_series_set, SetDeleter>;
using Bands = std::unique_ptr<rkb_bandset, BandDeleter>;
using Model = std::unique_ptr<rkb_model, ModelDeleter>;

SeriesSet load(const std::string& path, rkb_label_mode mode, std::size_t expected_length) {
  rkb_series_set* raw = nullptr;
  check(rkb_series_set_load(path.c_str(), mode, expected_length, &raw));
  return SeriesSet(raw);
}

struct Data {
  SeriesSet train;
  SeriesSet test;
  std::size_t length = 0;
};

/// Reads, normalizes and shrinks the training (and optional test) files.
Data prepare(const RunConfig& config, bool with_test) {
  Data data;
  data.train = load(config.train_path, RKB_LABELED, 0);
  if (rkb_series_set_count(data.train.get()) == 0) {
    throw Failure{kDataError, config.train_path + ": no series"};
  }
  if (with_test) {
    data.test = load(config.test_path, RKB_DETECT_LABELS, rkb_series_set_length(data.train.get()));
  }
  if (!config.no_normalize) {
    check(rkb_series_set_znormalize(data.train.get()));
    if (data.test) check(rkb_series_set_znormalize(data.test.get()));
  }
  int halvings = 0;
  check(rkb_preprocess(data.train.get(), data.test.get(), config.complexity_threshold, &data.length,
                       &halvings));
  if (halvings > 0) {
    std::cerr << "preprocess: halved " << halvings << " time(s) to length " << data.length << "\n";
  }
  return data;
}

Bands load_bands(const std::string& path, std::size_t length) {
  rkb_bandset* raw = nullptr;
  check(rkb_bandset_load(path.c_str(), &raw));
  Bands bands(raw);
  if (rkb_bandset_length(bands.get()) != length) {
    throw Failure{kIncompatible, path + ": band length " + std::to_string(rkb_bandset_length(bands.get())) +
                                     " does not match series length " + std::to_string(length)};
  }
  return bands;
}

struct Learned {
  Bands bands;
  rkb_learn_info info;
};

Learned learn(const RunConfig& config, const rkb_series_set* train) {
  rkb_learn_options options{config.bound_percent, config.seed,
                            config.log_path.empty() ? nullptr : config.log_path.c_str()};
  rkb_learn_info info{};
  rkb_bandset* raw = nullptr;
  check(rkb_learn(train, &options, &raw, &info));
  return {Bands(raw), info};
}

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    if (!out.flush()) {
      std::remove(tmp.c_str());
      throw Failure{kInternal, "cannot write " + tmp};
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Failure{kInternal, "cannot move " + tmp + " to " + path};
  }
}

int cmd_learn(const RunConfig& config) {
  auto data = prepare(config, false);
  auto learned = learn(config, data.train.get());
  double accuracy = 0.0;
  check(rkb_loo_accuracy(data.train.get(), learned.bands.get(), &accuracy));
  if (!config.band_out.empty()) check(rkb_bandset_save(learned.bands.get(), config.band_out.c_str()));

  std::cout << "length\t" << data.length << "\n"
            << "window_percent\t" << learned.info.window_percent << "\n"
            << "bound\t" << learned.info.bound << "\n"
            << "extraction_gs\t" << fmt(learned.info.extraction_heuristic) << "\n"
            << "iterative_gs\t" << fmt(learned.info.iterative_heuristic) << "\n"
            << "winner\t"
            << (learned.info.winner == RKB_LEARNER_EXTRACTION ? "extraction" : "iterative") << "\n"
            << "gs\t" << fmt(learned.info.heuristic) << "\n"
            << "loo_accuracy\t" << fmt(accuracy) << "\n";
  return kOk;
}

int cmd_predict(const RunConfig& config) {
  if (config.test_path.empty()) throw Failure{kUsage, "predict requires --test"};
  auto data = prepare(config, true);

  Bands bands;
  if (!config.band_in.empty()) {
    bands = load_bands(config.band_in, data.length);
  } else {
    auto learned = learn(config, data.train.get());
    bands = std::move(learned.bands);
    if (!config.band_out.empty()) check(rkb_bandset_save(bands.get(), config.band_out.c_str()));
  }

  rkb_model* raw = nullptr;
  check(rkb_model_create(data.train.get(), bands.get(), &raw));
  Model model(raw);
  const std::size_t count = rkb_series_set_count(data.test.get());
  std::vector<int> predictions(count);
  check(rkb_model_predict(model.get(), data.test.get(), predictions.data()));

  std::string text;
  for (int label : predictions) text += std::to_string(label) + "\n";
  std::ostream& report = config.predictions_path.empty() ? std::cerr : std::cout;
  if (config.predictions_path.empty()) {
    std::cout << text;
  } else {
    write_atomic(config.predictions_path, text);
  }
  report << "predicted_accuracy\t" << fmt(rkb_model_accuracy(model.get())) << "\n";
  if (rkb_series_set_is_labeled(data.test.get()) && count > 0) {
    std::vector<int> truth(count);
    check(rkb_series_set_labels(data.test.get(), truth.data()));
    std::size_t hits = 0;
    for (std::size_t k = 0; k < count; ++k) hits += truth[k] == predictions[k] ? 1 : 0;
    report << "test_accuracy\t" << fmt(static_cast<double>(hits) / static_cast<double>(count)) << "\n";
  }
  return kOk;
}

int cmd_eval(const RunConfig& config) {
  if (config.band_in.empty() == !config.sc_width.has_value()) {
    throw Failure{kUsage, "eval requires exactly one of --band-in or --sc-width"};
  }
  auto data = prepare(config, false);
  Bands bands;
  if (config.sc_width) {
    rkb_bandset* raw = nullptr;
    check(rkb_bandset_sakoe_chiba(data.train.get(), *config.sc_width, &raw));
    bands.reset(raw);
  } else {
    bands = load_bands(config.band_in, data.length);
  }
  double gs = 0.0;
  double accuracy = 0.0;
  check(rkb_evaluate(data.train.get(), bands.get(), &gs));
  check(rkb_loo_accuracy(data.train.get(), bands.get(), &accuracy));
  std::cout << "gs\t" << fmt(gs) << "\n"
            << "loo_accuracy\t" << fmt(accuracy) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Banded-DTW 1-NN time series classification with learned per-class warping bands"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--train", config.train_path, "labeled training file")->required();
    sub->add_option("--complexity-threshold", config.complexity_threshold,
                    "halve series until log10(N^2 L^2) is at most this")
        ->check(CLI::PositiveNumber);
    sub->add_option("--bound", config.bound_percent, "largest warping window, percent of length")
        ->check(CLI::Range(0, 100));
    sub->add_option("--seed", config.seed, "seed for randomized hill climbing");
    sub->add_option("--threads", config.threads, "worker threads (default: all cores)");
    sub->add_option("--log", config.log_path, "write the learning log (TSV)");
    sub->add_flag("--no-normalize", config.no_normalize, "skip z-normalization");
  };

  auto* learn_cmd = app.add_subcommand("learn", "learn the best band set from training data");
  add_common(learn_cmd);
  learn_cmd->add_option("--band-out", config.band_out, "write the learned band set (JSON)");

  auto* predict_cmd = app.add_subcommand("predict", "classify a test file");
  add_common(predict_cmd);
  predict_cmd->add_option("--test", config.test_path, "test file (labels optional)")->required();
  predict_cmd->add_option("--band-in", config.band_in, "use this band set instead of learning");
  predict_cmd->add_option("--band-out", config.band_out, "write the learned band set (JSON)");
  predict_cmd->add_option("--predictions", config.predictions_path,
                          "write labels here instead of stdout");

  auto* eval_cmd = app.add_subcommand("eval", "score a band set on training data");
  add_common(eval_cmd);
  eval_cmd->add_option("--band-in", config.band_in, "band set (JSON)");
  eval_cmd->add_option("--sc-width", config.sc_width, "uniform Sakoe-Chiba width, percent")
      ->check(CLI::Range(0, 100));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  rkb_set_threads(config.threads);
  try {
    if (learn_cmd->parsed()) return cmd_learn(config);
    if (predict_cmd->parsed()) return cmd_predict(config);
    return cmd_eval(config);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
}
