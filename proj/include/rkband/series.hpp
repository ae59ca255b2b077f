#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rkband/error.hpp"

namespace rkband {

using Label = int;

/// A univariate sequence of at least two real samples.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values);

  std::size_t length() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<double> values_;
};

/// Equal-length labeled series. Class labels are kept sorted ascending, which
/// fixes the class iteration order everywhere downstream.
class LabeledDataset {
 public:
  LabeledDataset(std::vector<TimeSeries> series, std::vector<Label> labels);

  std::size_t size() const noexcept { return series_.size(); }
  std::size_t series_length() const noexcept { return length_; }
  const TimeSeries& series(std::size_t i) const { return series_[i]; }
  Label label(std::size_t i) const { return labels_[i]; }
  const std::vector<TimeSeries>& all_series() const noexcept { return series_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  /// Distinct labels, ascending.
  const std::vector<Label>& classes() const noexcept { return classes_; }
  std::size_t class_count() const noexcept { return classes_.size(); }
  /// Item indices of one class in dataset order; empty for unknown labels.
  std::vector<std::size_t> members(Label label) const;

  /// Copy without item `i`. Used by leave-one-out.
  LabeledDataset without(std::size_t i) const;

 private:
  std::vector<TimeSeries> series_;
  std::vector<Label> labels_;
  std::vector<Label> classes_;
  std::size_t length_ = 0;
};

/// Zero mean, unit population standard deviation. A series whose standard
/// deviation is below 1e-12 maps to all zeros.
TimeSeries znormalize(const TimeSeries& series);

/// Halves the length with uniform linear interpolation; endpoints are kept.
/// Throws InvalidSeries for inputs shorter than 4.
TimeSeries resample_half(const TimeSeries& series);

/// log10(n^2 * m^2).
double complexity(std::size_t items, std::size_t length);

struct Preprocessed {
  LabeledDataset train;
  std::vector<TimeSeries> test;
  std::size_t length;
  int halvings;
};

/// Halves every train and test series until complexity(N, L) <= threshold.
/// Throws ComplexityUnreachable when L drops below 4 while still over.
Preprocessed preprocess(const LabeledDataset& train, const std::vector<TimeSeries>& test,
                        double threshold);

}  // namespace rkband
