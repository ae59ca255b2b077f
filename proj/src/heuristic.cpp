#include "rkband/heuristic.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "rkband/parallel.hpp"

namespace rkband {
namespace {

std::vector<Label> distinct(std::span<const Label> labels) {
  std::vector<Label> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return classes;
}

std::size_t class_index(const std::vector<Label>& classes, Label label) {
  return static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), label) -
                                  classes.begin());
}

double item_width(std::size_t i, std::span<const Label> labels, const std::vector<Label>& classes,
                  const PairDistance& dist) {
  std::vector<double> sums(classes.size(), 0.0);
  std::vector<std::size_t> counts(classes.size(), 0);
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const std::size_t k = class_index(classes, labels[j]);
    ++counts[k];
    if (j != i) sums[k] += dist(i, j);
  }
  const std::size_t own = class_index(classes, labels[i]);
  if (counts[own] < 2) return 0.0;

  const double a = sums[own] / static_cast<double>(counts[own] - 1);
  double b = 0.0;
  bool first = true;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (k == own) continue;
    const double mean = sums[k] / static_cast<double>(counts[k]);
    if (first || mean < b) b = mean;
    first = false;
  }
  const double denom = std::max(a, b);
  if (denom <= 0.0) return 0.0;
  return (b - a) / denom;
}

void require_two_classes(std::size_t classes) {
  if (classes < 2) {
    throw Error(ErrorCode::EvaluationUndefined,
                "silhouette needs at least 2 classes, got " + std::to_string(classes));
  }
}

}  // namespace

double silhouette_item(std::size_t i, std::span<const Label> labels, const PairDistance& dist) {
  const auto classes = distinct(labels);
  require_two_classes(classes.size());
  if (i >= labels.size()) {
    throw Error(ErrorCode::Index, "item " + std::to_string(i) + " out of range");
  }
  return item_width(i, labels, classes, dist);
}

SilhouetteReport silhouette(std::span<const Label> labels, const PairDistance& dist) {
  const auto classes = distinct(labels);
  require_two_classes(classes.size());

  SilhouetteReport report;
  report.per_item.resize(labels.size());
  std::vector<double> class_sum(classes.size(), 0.0);
  std::vector<std::size_t> class_count(classes.size(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double s = item_width(i, labels, classes, dist);
    report.per_item[i] = s;
    const std::size_t k = class_index(classes, labels[i]);
    class_sum[k] += s;
    ++class_count[k];
  }
  double total = 0.0;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const double mean = class_sum[k] / static_cast<double>(class_count[k]);
    report.per_class.emplace(classes[k], mean);
    total += mean;
  }
  report.global_index = total / static_cast<double>(classes.size());
  return report;
}

double evaluate(const LabeledDataset& data, const BandSet& bands) {
  return BandedEvaluator(data, bands).score();
}

SilhouetteReport evaluate_report(const LabeledDataset& data, const BandSet& bands) {
  return BandedEvaluator(data, bands).report();
}

BandedEvaluator::BandedEvaluator(const LabeledDataset& data, const BandSet& bands)
    : data_(data), bands_(bands), n_(data.size()), table_(data.size() * data.size(), 0.0) {
  require_two_classes(data.class_count());
  bands_.check_covers(data);
  for (Label c : data.classes()) members_.emplace(c, data.members(c));
  for (Label c : data.classes()) fill_class(c);
}

void BandedEvaluator::fill_class(Label label) {
  const BandWindow window(bands_.at(label));
  const auto& cols = members_.at(label);

  // Every ordered (i, j) with j in the class. Pairs inside the class are
  // symmetric under one band, so only i < j is computed for them.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n_ * cols.size());
  for (std::size_t j : cols) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == j) continue;
      if (data_.label(i) == label && i > j) continue;
      pairs.emplace_back(i, j);
    }
  }
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const double d = dtw_distance(data_.series(i).values(), data_.series(j).values(), window);
    table_[i * n_ + j] = d;
    if (data_.label(i) == label) table_[j * n_ + i] = d;
  });
}

double BandedEvaluator::score() const { return report().global_index; }

SilhouetteReport BandedEvaluator::report() const {
  return silhouette(data_.labels(), [this](std::size_t i, std::size_t j) { return table_[i * n_ + j]; });
}

BandedEvaluator::Undo BandedEvaluator::set_band(Label label, const RKBand& band) {
  Undo undo{label, bands_.at(label), {}};
  const auto& cols = members_.at(label);
  undo.columns.reserve(n_ * cols.size());
  for (std::size_t j : cols) {
    for (std::size_t i = 0; i < n_; ++i) undo.columns.push_back(table_[i * n_ + j]);
  }
  bands_.set(label, band);
  fill_class(label);
  return undo;
}

void BandedEvaluator::restore(Undo undo) {
  const auto& cols = members_.at(undo.label);
  std::size_t k = 0;
  for (std::size_t j : cols) {
    for (std::size_t i = 0; i < n_; ++i) table_[i * n_ + j] = undo.columns[k++];
  }
  bands_.set(undo.label, std::move(undo.band));
}

}  // namespace rkband
