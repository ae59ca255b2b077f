#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "rkband/series.hpp"

namespace rkband {

enum class Adjustment { Grow, Shrink };

/// Variable-width warping band: one width per diagonal index. Indices are
/// 0-based. Width r[i] bounds both how far row i may reach to the right of the
/// diagonal and how far column i may reach above it, so the admitted region
/// is symmetric about the diagonal:
///
///   (i, j) allowed  <=>  (j >= i && j - i <= r[i]) || (i >= j && i - j <= r[j])
class RKBand {
 public:
  /// Throws Configuration unless every width lies in [0, n].
  explicit RKBand(std::vector<int> widths);

  static RKBand uniform(std::size_t n, int width);

  std::size_t length() const noexcept { return widths_.size(); }
  std::span<const int> widths() const noexcept { return widths_; }
  int operator[](std::size_t i) const noexcept { return widths_[i]; }

  /// Throws Index for cells outside the n x n grid.
  bool allows(std::size_t i, std::size_t j) const;

  friend bool operator==(const RKBand&, const RKBand&) = default;

 private:
  std::vector<int> widths_;
};

/// Sakoe-Chiba band of round-half-up(n * percent / 100), clamped to [0, n].
RKBand sakoe_chiba(std::size_t n, int width_percent);

struct AdjustResult {
  RKBand band;
  bool adjustable;
};

/// Moves every width in [start, end] (inclusive, 0-based) by one. All or
/// nothing: a grow that would push any width above `bound`, or a shrink that
/// would push any below 0, leaves the band untouched and reports false.
AdjustResult adjust_segment(const RKBand& band, std::size_t start, std::size_t end,
                            Adjustment direction, int bound);

/// One band per class, all of the same length.
class BandSet {
 public:
  BandSet() = default;
  BandSet(std::size_t length, std::map<Label, RKBand> bands);

  /// The same band for every class of `data`.
  static BandSet uniform(const LabeledDataset& data, const RKBand& band);

  std::size_t length() const noexcept { return length_; }
  const std::map<Label, RKBand>& bands() const noexcept { return bands_; }
  bool contains(Label label) const { return bands_.count(label) != 0; }
  /// Throws Configuration for labels without a band.
  const RKBand& at(Label label) const;
  void set(Label label, RKBand band);

  /// Throws Configuration unless every class of `data` has a band of the
  /// dataset's series length.
  void check_covers(const LabeledDataset& data) const;

  friend bool operator==(const BandSet&, const BandSet&) = default;

 private:
  std::size_t length_ = 0;
  std::map<Label, RKBand> bands_;
};

}  // namespace rkband
