#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "rkband/band.hpp"
#include "rkband/dtw.hpp"
#include "rkband/series.hpp"

namespace rkband {

/// d(i, j) between items of a labeled collection.
using PairDistance = std::function<double(std::size_t, std::size_t)>;

struct SilhouetteReport {
  double global_index = 0.0;
  std::map<Label, double> per_class;
  std::vector<double> per_item;
};

/// Silhouette width of item i: (b - a) / max(a, b), where a is the mean
/// distance to the other members of its class and b the smallest mean
/// distance to any other class. Singleton classes and a == b == 0 give 0.
/// Throws EvaluationUndefined with fewer than two classes.
double silhouette_item(std::size_t i, std::span<const Label> labels, const PairDistance& dist);

/// Global silhouette: mean over classes of the per-class mean item width.
SilhouetteReport silhouette(std::span<const Label> labels, const PairDistance& dist);

/// Global silhouette of a dataset where d(i, j) is the DTW distance under the
/// band of j's class. Throws Configuration when a class has no band.
double evaluate(const LabeledDataset& data, const BandSet& bands);
SilhouetteReport evaluate_report(const LabeledDataset& data, const BandSet& bands);

/// Cached ordered-pair distance table for repeated evaluation while one
/// class band at a time changes. Column j depends only on the band of j's
/// class, so replacing a band recomputes just that class's columns.
class BandedEvaluator {
 public:
  BandedEvaluator(const LabeledDataset& data, const BandSet& bands);

  const BandSet& bands() const noexcept { return bands_; }
  double score() const;
  SilhouetteReport report() const;
  double distance(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

  /// Token for undoing one set_band call.
  struct Undo {
    Label label;
    RKBand band;
    std::vector<double> columns;
  };

  Undo set_band(Label label, const RKBand& band);
  void restore(Undo undo);

 private:
  void fill_class(Label label);

  const LabeledDataset& data_;
  BandSet bands_;
  std::size_t n_;
  std::vector<double> table_;
  std::map<Label, std::vector<std::size_t>> members_;
};

}  // namespace rkband
