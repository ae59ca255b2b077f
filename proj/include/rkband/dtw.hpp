#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rkband/band.hpp"
#include "rkband/series.hpp"

namespace rkband {

/// Row-wise view of an RKBand for the DTW kernels. Row i admits columns in
/// [first(i), last(i)]; below the diagonal the admitted set can have holes
/// (column j < i is admitted only when j + r[j] >= i), which allows() checks.
class BandWindow {
 public:
  explicit BandWindow(const RKBand& band);

  std::size_t length() const noexcept { return widths_.size(); }
  std::size_t first(std::size_t row) const noexcept { return first_[row]; }
  std::size_t last(std::size_t row) const noexcept { return last_[row]; }
  bool allows(std::size_t row, std::size_t col) const noexcept {
    return col >= row ? col - row <= widths_[row] : row - col <= widths_[col];
  }

 private:
  std::vector<std::size_t> widths_;
  std::vector<std::size_t> first_;
  std::vector<std::size_t> last_;
};

struct Cell {
  std::size_t i;
  std::size_t j;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Monotone, continuous alignment from (0, 0) to (n-1, n-1).
using WarpingPath = std::vector<Cell>;

/// sqrt of the minimum cumulative squared-difference cost over all band
/// feasible warping paths. Uses two rolling rows.
double dtw_distance(std::span<const double> q, std::span<const double> c, const BandWindow& window);
double dtw_distance(const TimeSeries& q, const TimeSeries& c, const RKBand& band);

/// One optimal path, backtracked from (n-1, n-1). At each step the predecessor
/// with the smallest cumulative cost wins; ties prefer (i-1, j-1), then
/// (i, j-1), then (i-1, j).
WarpingPath dtw_path(std::span<const double> q, std::span<const double> c, const BandWindow& window);
WarpingPath dtw_path(const TimeSeries& q, const TimeSeries& c, const RKBand& band);

/// Upper and lower envelope of a candidate under a band.
struct Envelope {
  std::vector<double> upper;
  std::vector<double> lower;
};

Envelope keogh_envelope(std::span<const double> c, const BandWindow& window);

/// LB_Keogh of a query against a precomputed candidate envelope (rooted).
double lb_keogh(std::span<const double> q, const Envelope& envelope);
double lb_keogh(const TimeSeries& q, const TimeSeries& c, const RKBand& band);

}  // namespace rkband
