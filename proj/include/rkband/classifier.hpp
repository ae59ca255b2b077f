#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rkband/band.hpp"
#include "rkband/dtw.hpp"
#include "rkband/learning.hpp"
#include "rkband/series.hpp"

namespace rkband {

/// Training set plus per-class bands, with each training item's LB_Keogh
/// envelope precomputed under its own class band.
class NearestNeighbor {
 public:
  NearestNeighbor(LabeledDataset train, BandSet bands);

  const LabeledDataset& train() const noexcept { return train_; }
  const BandSet& bands() const noexcept { return bands_; }

  struct Match {
    std::size_t index;
    Label label;
    double distance;
    /// Candidates whose exact DTW was skipped by the lower bound.
    std::size_t pruned;
  };

  /// 1-NN under each candidate's class band. Candidates are visited in
  /// ascending LB_Keogh order and skipped once their bound exceeds the best
  /// exact distance. Distance ties go to the earliest training item.
  /// `exclude` removes one training item (leave-one-out).
  Match nearest(const TimeSeries& query, std::optional<std::size_t> exclude = std::nullopt) const;

  /// Same answer without any pruning; reference path for tests.
  Match nearest_exhaustive(const TimeSeries& query,
                           std::optional<std::size_t> exclude = std::nullopt) const;

  Label predict(const TimeSeries& query) const { return nearest(query).label; }
  std::vector<Label> predict(const std::vector<TimeSeries>& queries) const;

 private:
  void check_query(const TimeSeries& query) const;

  LabeledDataset train_;
  BandSet bands_;
  std::vector<BandWindow> windows_;
  std::vector<Envelope> envelopes_;
};

/// Fraction of training items whose nearest other item shares their label.
/// Throws UndefinedAccuracy below 2 items.
double loo_accuracy(const LabeledDataset& data, const BandSet& bands);

struct ClassifierModel {
  NearestNeighbor classifier;
  double predicted_accuracy;
};

ClassifierModel build_model(LabeledDataset train, BandSet bands);

struct PipelineResult {
  std::vector<Label> predictions;
  double predicted_accuracy = 0.0;
  LearnResult learned;
  std::size_t length = 0;
  int halvings = 0;
};

/// Preprocess, learn the best band set, score it by leave-one-out and
/// predict every test series.
PipelineResult run_pipeline(const LabeledDataset& train, const std::vector<TimeSeries>& test,
                            double complexity_threshold, int bound_percent, std::uint64_t seed,
                            LearningLog* log = nullptr);

}  // namespace rkband
