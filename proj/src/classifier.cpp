#include "rkband/classifier.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "rkband/parallel.hpp"

namespace rkband {
namespace {

// Slack on the pruning test so a bound equal to the best distance up to
// rounding never skips a candidate that could still tie.
constexpr double kPruneSlack = 1e-12;

bool better_match(double d, std::size_t idx, double best, std::size_t best_idx) {
  return d < best || (d == best && idx < best_idx);
}

}  // namespace

NearestNeighbor::NearestNeighbor(LabeledDataset train, BandSet bands)
    : train_(std::move(train)), bands_(std::move(bands)) {
  bands_.check_covers(train_);
  std::map<Label, BandWindow> by_class;
  for (Label c : train_.classes()) by_class.emplace(c, BandWindow(bands_.at(c)));
  windows_.reserve(train_.size());
  envelopes_.reserve(train_.size());
  for (std::size_t i = 0; i < train_.size(); ++i) {
    const auto& window = by_class.at(train_.label(i));
    windows_.push_back(window);
    envelopes_.push_back(keogh_envelope(train_.series(i).values(), window));
  }
}

void NearestNeighbor::check_query(const TimeSeries& query) const {
  if (query.length() != train_.series_length()) {
    throw Error(ErrorCode::Dimension, "query length " + std::to_string(query.length()) +
                                          " does not match training length " +
                                          std::to_string(train_.series_length()));
  }
}

NearestNeighbor::Match NearestNeighbor::nearest(const TimeSeries& query,
                                                std::optional<std::size_t> exclude) const {
  check_query(query);
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(train_.size());
  for (std::size_t i = 0; i < train_.size(); ++i) {
    if (exclude && *exclude == i) continue;
    order.emplace_back(lb_keogh(query.values(), envelopes_[i]), i);
  }
  if (order.empty()) throw Error(ErrorCode::Dimension, "no training items to compare against");
  std::sort(order.begin(), order.end());

  Match best{train_.size(), 0, std::numeric_limits<double>::infinity(), 0};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto [bound, i] = order[k];
    if (bound > best.distance * (1.0 + kPruneSlack)) {
      best.pruned = order.size() - k;
      break;
    }
    const double d = dtw_distance(query.values(), train_.series(i).values(), windows_[i]);
    if (better_match(d, i, best.distance, best.index)) {
      best.index = i;
      best.distance = d;
    }
  }
  best.label = train_.label(best.index);
  return best;
}

NearestNeighbor::Match NearestNeighbor::nearest_exhaustive(const TimeSeries& query,
                                                           std::optional<std::size_t> exclude) const {
  check_query(query);
  Match best{train_.size(), 0, std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < train_.size(); ++i) {
    if (exclude && *exclude == i) continue;
    const double d = dtw_distance(query.values(), train_.series(i).values(), windows_[i]);
    if (better_match(d, i, best.distance, best.index)) {
      best.index = i;
      best.distance = d;
    }
  }
  if (best.index == train_.size()) {
    throw Error(ErrorCode::Dimension, "no training items to compare against");
  }
  best.label = train_.label(best.index);
  return best;
}

std::vector<Label> NearestNeighbor::predict(const std::vector<TimeSeries>& queries) const {
  std::vector<Label> out(queries.size());
  parallel_for(queries.size(), [&](std::size_t k) { out[k] = predict(queries[k]); });
  return out;
}

double loo_accuracy(const LabeledDataset& data, const BandSet& bands) {
  if (data.size() < 2) {
    throw Error(ErrorCode::UndefinedAccuracy, "leave-one-out needs at least 2 items");
  }
  const NearestNeighbor nn(data, bands);
  std::vector<char> correct(data.size(), 0);
  parallel_for(data.size(), [&](std::size_t i) {
    correct[i] = nn.nearest(data.series(i), i).label == data.label(i) ? 1 : 0;
  });
  const auto hits = std::count(correct.begin(), correct.end(), 1);
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

ClassifierModel build_model(LabeledDataset train, BandSet bands) {
  const double accuracy = loo_accuracy(train, bands);
  return {NearestNeighbor(std::move(train), std::move(bands)), accuracy};
}

PipelineResult run_pipeline(const LabeledDataset& train, const std::vector<TimeSeries>& test,
                            double complexity_threshold, int bound_percent, std::uint64_t seed,
                            LearningLog* log) {
  auto pre = preprocess(train, test, complexity_threshold);
  PipelineResult result;
  result.length = pre.length;
  result.halvings = pre.halvings;
  result.learned = learn_best_band(pre.train, bound_percent, seed, log);
  auto model = build_model(pre.train, result.learned.bands);
  result.predicted_accuracy = model.predicted_accuracy;
  result.predictions = model.classifier.predict(pre.test);
  return result;
}

}  // namespace rkband
