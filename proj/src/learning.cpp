#include "rkband/learning.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <limits>
#include <random>

#include "rkband/parallel.hpp"

namespace rkband {
namespace {

std::string format_score(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

template <typename T>
std::string or_dash(const std::optional<T>& value) {
  return value ? std::to_string(*value) : std::string("-");
}

std::mt19937_64 seeded_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

// splitmix64 finalizer; derives one seed per hill-climbing call.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SegmentTask {
  std::size_t start;
  std::size_t end;
  Label label;
};

}  // namespace

const char* to_string(Direction direction) {
  return direction == Direction::Forward ? "forward" : "backward";
}

const char* to_string(Learner learner) {
  return learner == Learner::Extraction ? "extraction" : "iterative";
}

void LearningLog::record(LearningEvent event) {
  event.step = events_.size();
  events_.push_back(std::move(event));
}

void LearningLog::write_tsv(std::ostream& out) const {
  out << "# seed\t" << seed_ << '\n';
  out << "step\trun\tphase\tstart\tend\tlabel\tbefore\tafter\taccepted\n";
  for (const auto& e : events_) {
    out << e.step << '\t' << or_dash(e.run) << '\t' << e.phase << '\t' << or_dash(e.start) << '\t'
        << or_dash(e.end) << '\t' << or_dash(e.label) << '\t' << format_score(e.before) << '\t'
        << format_score(e.after) << '\t' << (e.accepted ? 1 : 0) << '\n';
  }
}

PathMatrix::PathMatrix(std::size_t length, Label label)
    : n_(length), label_(label), counts_(length * length, 0) {}

void PathMatrix::add(const WarpingPath& path) {
  for (const auto& cell : path) {
    if (cell.i >= n_ || cell.j >= n_) {
      throw Error(ErrorCode::Index, "path cell outside the path matrix");
    }
    ++counts_[cell.i * n_ + cell.j];
  }
  ++paths_;
}

std::vector<std::uint64_t> PathMatrix::offset_histogram(std::size_t i) const {
  std::vector<std::uint64_t> hist(n_, 0);
  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t offset = k > i ? k - i : i - k;
    hist[offset] += counts_[i * n_ + k];
    if (k != i) hist[offset] += counts_[k * n_ + i];
  }
  return hist;
}

BoundaryBands boundary_bands(const PathMatrix& matrix) {
  const std::size_t n = matrix.length();
  std::vector<int> max(n, 0), mean(n, 0), mode(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto hist = matrix.offset_histogram(i);
    std::uint64_t weight = 0;
    std::uint64_t moment = 0;
    std::uint64_t mode_weight = 0;
    for (std::size_t o = 0; o < n; ++o) {
      if (hist[o] == 0) continue;
      weight += hist[o];
      moment += hist[o] * o;
      max[i] = static_cast<int>(o);
      if (hist[o] > mode_weight) {
        mode_weight = hist[o];
        mode[i] = static_cast<int>(o);
      }
    }
    if (weight > 0) mean[i] = static_cast<int>((moment + weight - 1) / weight);
  }
  return {RKBand(std::move(max)), RKBand(std::move(mean)), RKBand(std::move(mode))};
}

PathMatrix class_path_matrix(const LabeledDataset& data, Label label) {
  const std::size_t n = data.series_length();
  const BandWindow full(RKBand::uniform(n, static_cast<int>(n)));
  const auto members = data.members(label);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a : members) {
    for (std::size_t b : members) {
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  std::vector<WarpingPath> paths(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    paths[k] = dtw_path(data.series(pairs[k].first).values(), data.series(pairs[k].second).values(), full);
  });

  PathMatrix matrix(n, label);
  for (const auto& p : paths) matrix.add(p);
  return matrix;
}

ExtractionResult extract_boundary_bands(const LabeledDataset& data, LearningLog* log) {
  const std::size_t n = data.series_length();
  std::map<Label, RKBand> max, mean, mode;
  for (Label c : data.classes()) {
    auto bands = boundary_bands(class_path_matrix(data, c));
    max.emplace(c, std::move(bands.max));
    mean.emplace(c, std::move(bands.mean));
    mode.emplace(c, std::move(bands.mode));
  }

  ExtractionResult result{BandSet{}, 0.0, "", BandSet(n, std::move(max)), BandSet(n, std::move(mean)),
                          BandSet(n, std::move(mode))};
  const std::pair<const char*, const BandSet*> candidates[] = {
      {"max", &result.max}, {"mean", &result.mean}, {"mode", &result.mode}};
  bool first = true;
  for (const auto& [name, bands] : candidates) {
    const double h = evaluate(data, *bands);
    const bool better = first || h > result.heuristic;
    if (log) {
      log->record({0, std::nullopt, std::string("extract:") + name, std::nullopt, std::nullopt,
                   std::nullopt, first ? h : result.heuristic, h, better});
    }
    if (better) {
      result.heuristic = h;
      result.bands = *bands;
      result.chosen = name;
    }
    first = false;
  }
  return result;
}

int best_warping_window(const LabeledDataset& data, int bound_percent, LearningLog* log) {
  if (bound_percent < 0 || bound_percent > 100) {
    throw Error(ErrorCode::Configuration,
                "warping window bound " + std::to_string(bound_percent) + "% outside [0, 100]");
  }
  if (bound_percent == 0) return 0;

  const std::size_t n = data.series_length();
  std::map<int, double> by_width;
  double best = -std::numeric_limits<double>::infinity();
  int best_percent = 0;
  for (int k = bound_percent; k >= 0; --k) {
    const RKBand band = sakoe_chiba(n, k);
    auto it = by_width.find(band[0]);
    if (it == by_width.end()) {
      it = by_width.emplace(band[0], evaluate(data, BandSet::uniform(data, band))).first;
    }
    const double h = it->second;
    const bool better = h >= best;
    if (log) {
      log->record({0, std::nullopt, "window:" + std::to_string(k), std::nullopt, std::nullopt,
                   std::nullopt, best, h, better});
    }
    if (better) {
      best = h;
      best_percent = k;
    }
  }
  return best_percent;
}

std::size_t learning_cap(const LabeledDataset& data) {
  return 10 * data.class_count() * data.series_length();
}

HillClimbResult hillclimb_learn(const LabeledDataset& data, const BandSet& initial,
                                const HillClimbOptions& options, LearningLog* log) {
  const std::size_t n = data.series_length();
  if (options.bound < 0 || options.bound > static_cast<int>(n)) {
    throw Error(ErrorCode::Configuration, "bound " + std::to_string(options.bound) +
                                              " outside [0, " + std::to_string(n) + "]");
  }
  if (options.threshold < 1) {
    throw Error(ErrorCode::Configuration, "hill-climbing split threshold must be at least 1");
  }
  BandedEvaluator evaluator(data, initial);
  double best = evaluator.score();
  const std::size_t run = log ? log->next_run() : 0;
  auto engine = seeded_engine(options.seed);
  const Adjustment adjustment =
      options.direction == Direction::Forward ? Adjustment::Grow : Adjustment::Shrink;

  std::vector<SegmentTask> queue;
  for (Label c : data.classes()) queue.push_back({0, n - 1, c});

  const std::size_t cap = learning_cap(data);
  HillClimbResult result;
  while (!queue.empty()) {
    if (result.dequeues == cap) {
      result.capped = true;
      if (log) {
        log->record({0, run, "cap", std::nullopt, std::nullopt, std::nullopt, best, best, false});
      }
      break;
    }
    const std::size_t pick = static_cast<std::size_t>(engine() % queue.size());
    const SegmentTask task = queue[pick];
    queue[pick] = queue.back();
    queue.pop_back();
    ++result.dequeues;

    auto [band, adjustable] =
        adjust_segment(evaluator.bands().at(task.label), task.start, task.end, adjustment, options.bound);
    if (!adjustable) continue;

    auto undo = evaluator.set_band(task.label, band);
    const double h = evaluator.score();
    const bool accepted = h > best;
    if (log) {
      log->record({0, run, to_string(options.direction), task.start, task.end, task.label, best, h,
                   accepted});
    }
    if (accepted) {
      best = h;
      queue.push_back(task);
      continue;
    }
    evaluator.restore(std::move(undo));
    if ((task.end - task.start) / 2 >= options.threshold) {
      const std::size_t mid = (task.start + task.end) / 2;
      queue.push_back({task.start, mid - 1, task.label});
      queue.push_back({mid, task.end, task.label});
    }
  }
  result.bands = evaluator.bands();
  result.heuristic = best;
  return result;
}

IterativeResult iterative_learn(const LabeledDataset& data, int r_percent, int bound,
                                std::uint64_t seed, LearningLog* log) {
  const std::size_t n = data.series_length();
  IterativeResult result;
  result.bands = BandSet::uniform(data, sakoe_chiba(n, r_percent));
  result.heuristic = evaluate(data, result.bands);
  result.initial_heuristic = result.heuristic;

  const std::size_t cap = learning_cap(data);
  std::size_t threshold = n / 2;
  while (threshold >= 1) {
    if (result.iterations == cap) {
      if (log) {
        log->record({0, std::nullopt, "cap", std::nullopt, std::nullopt, std::nullopt,
                     result.heuristic, result.heuristic, false});
      }
      break;
    }
    const std::uint64_t stream = 2 * result.iterations;
    ++result.iterations;
    HillClimbOptions options{threshold, bound, Direction::Forward, mix_seed(seed, stream)};
    auto forward = hillclimb_learn(data, result.bands, options, log);
    options.direction = Direction::Backward;
    options.seed = mix_seed(seed, stream + 1);
    auto backward = hillclimb_learn(data, result.bands, options, log);

    auto& better = backward.heuristic > forward.heuristic ? backward : forward;
    if (better.heuristic > result.heuristic) {
      result.heuristic = better.heuristic;
      result.bands = std::move(better.bands);
    } else {
      threshold /= 2;
    }
  }
  return result;
}

int bound_cells(std::size_t length, int bound_percent) {
  return sakoe_chiba(length, bound_percent)[0];
}

LearnResult learn_best_band(const LabeledDataset& data, int bound_percent, std::uint64_t seed,
                            LearningLog* log) {
  LearnResult result;
  auto extracted = extract_boundary_bands(data, log);
  result.bands = std::move(extracted.bands);
  result.heuristic = extracted.heuristic;
  result.extraction_heuristic = extracted.heuristic;

  result.window_percent = best_warping_window(data, bound_percent, log);
  result.bound = bound_cells(data.series_length(), bound_percent);
  auto iterative = iterative_learn(data, result.window_percent, result.bound, seed, log);
  result.iterative_heuristic = iterative.heuristic;
  if (iterative.heuristic > result.heuristic) {
    result.bands = std::move(iterative.bands);
    result.heuristic = iterative.heuristic;
    result.winner = Learner::Iterative;
  }
  return result;
}

}  // namespace rkband
