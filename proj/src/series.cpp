#include "rkband/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rkband {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorCode::InvalidSeries,
                "time series needs at least 2 samples, got " + std::to_string(values_.size()));
  }
}

LabeledDataset::LabeledDataset(std::vector<TimeSeries> series, std::vector<Label> labels)
    : series_(std::move(series)), labels_(std::move(labels)) {
  if (series_.empty()) throw Error(ErrorCode::InvalidSeries, "dataset is empty");
  if (series_.size() != labels_.size()) {
    throw Error(ErrorCode::Dimension, "dataset has " + std::to_string(series_.size()) +
                                          " series but " + std::to_string(labels_.size()) +
                                          " labels");
  }
  length_ = series_.front().length();
  for (std::size_t i = 0; i < series_.size(); ++i) {
    if (series_[i].length() != length_) {
      throw Error(ErrorCode::Dimension, "series " + std::to_string(i) + " has length " +
                                            std::to_string(series_[i].length()) + ", expected " +
                                            std::to_string(length_));
    }
  }
  classes_ = labels_;
  std::sort(classes_.begin(), classes_.end());
  classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
}

std::vector<std::size_t> LabeledDataset::members(Label label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) out.push_back(i);
  }
  return out;
}

LabeledDataset LabeledDataset::without(std::size_t i) const {
  std::vector<TimeSeries> series;
  std::vector<Label> labels;
  series.reserve(size() - 1);
  labels.reserve(size() - 1);
  for (std::size_t k = 0; k < size(); ++k) {
    if (k == i) continue;
    series.push_back(series_[k]);
    labels.push_back(labels_[k]);
  }
  return LabeledDataset(std::move(series), std::move(labels));
}

TimeSeries znormalize(const TimeSeries& series) {
  const auto v = series.values();
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / n);

  std::vector<double> out(v.size(), 0.0);
  if (sd < 1e-12) return TimeSeries(std::move(out));
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
  return TimeSeries(std::move(out));
}

TimeSeries resample_half(const TimeSeries& series) {
  const std::size_t len = series.length();
  if (len < 4) {
    throw Error(ErrorCode::InvalidSeries,
                "cannot halve a series of length " + std::to_string(len) + " (minimum 4)");
  }
  const std::size_t out_len = len / 2;
  const double step = static_cast<double>(len - 1) / static_cast<double>(out_len - 1);
  std::vector<double> out(out_len);
  for (std::size_t k = 0; k < out_len; ++k) {
    if (k == out_len - 1) {
      out[k] = series[len - 1];
      continue;
    }
    const double pos = static_cast<double>(k) * step;
    const auto left = std::min(static_cast<std::size_t>(pos), len - 2);
    const double frac = pos - static_cast<double>(left);
    out[k] = series[left] + frac * (series[left + 1] - series[left]);
  }
  return TimeSeries(std::move(out));
}

double complexity(std::size_t items, std::size_t length) {
  const double n = static_cast<double>(items);
  const double m = static_cast<double>(length);
  return 2.0 * std::log10(n) + 2.0 * std::log10(m);
}

Preprocessed preprocess(const LabeledDataset& train, const std::vector<TimeSeries>& test,
                        double threshold) {
  const std::size_t length = train.series_length();
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (test[i].length() != length) {
      throw Error(ErrorCode::Dimension, "test series " + std::to_string(i) + " has length " +
                                            std::to_string(test[i].length()) +
                                            ", training length is " + std::to_string(length));
    }
  }

  Preprocessed out{train, test, length, 0};
  while (complexity(train.size(), out.length) > threshold) {
    if (out.length < 4) {
      throw Error(ErrorCode::ComplexityUnreachable,
                  "complexity threshold " + std::to_string(threshold) +
                      " unreachable; smallest achievable length is " +
                      std::to_string(out.length) + " (complexity " +
                      std::to_string(complexity(train.size(), out.length)) + ")");
    }
    std::vector<TimeSeries> shrunk;
    shrunk.reserve(out.train.size());
    for (const auto& s : out.train.all_series()) shrunk.push_back(resample_half(s));
    out.train = LabeledDataset(std::move(shrunk), out.train.labels());
    for (auto& s : out.test) s = resample_half(s);
    out.length = out.train.series_length();
    ++out.halvings;
  }
  return out;
}

}  // namespace rkband
