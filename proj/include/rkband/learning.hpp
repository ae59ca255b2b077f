#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rkband/band.hpp"
#include "rkband/dtw.hpp"
#include "rkband/heuristic.hpp"
#include "rkband/series.hpp"

namespace rkband {

enum class Direction { Forward, Backward };

const char* to_string(Direction direction);

/// One heuristic evaluation made while learning.
struct LearningEvent {
  std::size_t step = 0;
  /// Hill-climbing invocation this event belongs to; empty outside hill climbing.
  std::optional<std::size_t> run;
  /// "extract:max", "window:<k>", "forward", "backward", "cap", ...
  std::string phase;
  std::optional<std::size_t> start;
  std::optional<std::size_t> end;
  std::optional<Label> label;
  double before = 0.0;
  double after = 0.0;
  bool accepted = false;
};

class LearningLog {
 public:
  explicit LearningLog(std::uint64_t seed = 0) : seed_(seed) {}

  void record(LearningEvent event);
  std::size_t next_run() { return runs_++; }
  const std::vector<LearningEvent>& events() const noexcept { return events_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Tab-separated, one event per line after a seed comment and a header.
  /// Heuristic values use 17 significant digits.
  void write_tsv(std::ostream& out) const;

 private:
  std::uint64_t seed_;
  std::size_t runs_ = 0;
  std::vector<LearningEvent> events_;
};

/// Visit counts of warping paths accumulated for one class.
class PathMatrix {
 public:
  PathMatrix(std::size_t length, Label label);

  void add(const WarpingPath& path);
  std::size_t length() const noexcept { return n_; }
  Label label() const noexcept { return label_; }
  std::size_t paths() const noexcept { return paths_; }
  std::uint64_t count(std::size_t i, std::size_t j) const { return counts_[i * n_ + j]; }

  /// Visit-weighted histogram of |x - y| over row i and column i (the
  /// diagonal cell counted once). Index = offset.
  std::vector<std::uint64_t> offset_histogram(std::size_t i) const;

 private:
  std::size_t n_;
  Label label_;
  std::size_t paths_ = 0;
  std::vector<std::uint64_t> counts_;
};

struct BoundaryBands {
  RKBand max;
  RKBand mean;
  RKBand mode;
};

/// Per diagonal index: largest offset, ceiling of the weighted mean offset,
/// and most visited offset (smaller offset on ties). Unvisited rows get 0.
BoundaryBands boundary_bands(const PathMatrix& matrix);

/// Path matrix of all ordered within-class pairs under unconstrained DTW.
PathMatrix class_path_matrix(const LabeledDataset& data, Label label);

struct ExtractionResult {
  BandSet bands;
  double heuristic = 0.0;
  /// "max", "mean" or "mode".
  std::string chosen;
  BandSet max;
  BandSet mean;
  BandSet mode;
};

/// Builds MaxBand, MeanBand and ModeBand sets from within-class warping
/// paths and keeps the best scoring one (earlier candidate on ties).
ExtractionResult extract_boundary_bands(const LabeledDataset& data, LearningLog* log = nullptr);

/// Sakoe-Chiba width in percent, scanning bound_percent down to 0, with the
/// highest heuristic; the smaller width wins ties.
int best_warping_window(const LabeledDataset& data, int bound_percent, LearningLog* log = nullptr);

struct HillClimbOptions {
  /// Minimum half-length for a segment to be split after a rejected move.
  std::size_t threshold = 1;
  /// Largest width a grow may reach.
  int bound = 0;
  Direction direction = Direction::Forward;
  std::uint64_t seed = 0;
};

struct HillClimbResult {
  BandSet bands;
  double heuristic = 0.0;
  std::size_t dequeues = 0;
  bool capped = false;
};

/// Randomized single-queue segment hill climbing over all class bands.
HillClimbResult hillclimb_learn(const LabeledDataset& data, const BandSet& initial,
                                const HillClimbOptions& options, LearningLog* log = nullptr);

/// Dequeue cap for one hill-climbing run (and outer iterations of
/// iterative_learn): 10 * classes * length.
std::size_t learning_cap(const LabeledDataset& data);

struct IterativeResult {
  BandSet bands;
  double heuristic = 0.0;
  double initial_heuristic = 0.0;
  std::size_t iterations = 0;
};

/// Alternates forward and backward hill climbing from a uniform band of
/// r_percent, halving the split threshold whenever a round brings no
/// strict improvement, until the threshold drops below 1.
IterativeResult iterative_learn(const LabeledDataset& data, int r_percent, int bound,
                                std::uint64_t seed, LearningLog* log = nullptr);

enum class Learner { Extraction, Iterative };

const char* to_string(Learner learner);

struct LearnResult {
  BandSet bands;
  double heuristic = 0.0;
  Learner winner = Learner::Extraction;
  double extraction_heuristic = 0.0;
  double iterative_heuristic = 0.0;
  int window_percent = 0;
  int bound = 0;
};

/// round-half-up(percent * length / 100).
int bound_cells(std::size_t length, int bound_percent);

/// Extraction, then iterative learning seeded by the best warping window;
/// the iterative result replaces extraction only on strict improvement.
LearnResult learn_best_band(const LabeledDataset& data, int bound_percent, std::uint64_t seed,
                            LearningLog* log = nullptr);

}  // namespace rkband
