#include "rkband/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rkband {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_lengths(std::size_t q, std::size_t c, std::size_t n) {
  if (q != n || c != n) {
    throw Error(ErrorCode::Dimension, "series lengths " + std::to_string(q) + " and " +
                                          std::to_string(c) + " do not match band length " +
                                          std::to_string(n));
  }
}

inline double sq(double x) { return x * x; }

}  // namespace

BandWindow::BandWindow(const RKBand& band)
    : widths_(band.widths().begin(), band.widths().end()),
      first_(band.length()),
      last_(band.length()) {
  const std::size_t n = widths_.size();
  // first(row) = min j with j + r[j] >= row; nondecreasing in row, so one
  // pointer over the running maximum of j + r[j] suffices.
  std::size_t j = 0;
  std::size_t reach = widths_[0];
  for (std::size_t row = 0; row < n; ++row) {
    while (reach < row) {
      ++j;
      reach = std::max(reach, j + widths_[j]);
    }
    first_[row] = j;
    last_[row] = std::min(n - 1, row + widths_[row]);
  }
}

double dtw_distance(std::span<const double> q, std::span<const double> c, const BandWindow& window) {
  const std::size_t n = window.length();
  check_lengths(q.size(), c.size(), n);

  std::vector<double> prev(n, kInf);
  std::vector<double> curr(n, kInf);
  // Columns written into each buffer; a buffer is cleared before reuse.
  std::size_t stale_first = 1;
  std::size_t stale_last = 0;
  std::size_t prev_first = 1;
  std::size_t prev_last = 0;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = stale_first; j <= stale_last; ++j) curr[j] = kInf;
    const std::size_t lo = window.first(i);
    const std::size_t hi = window.last(i);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j < i && !window.allows(i, j)) continue;
      const double d = sq(q[i] - c[j]);
      if (i == 0 && j == 0) {
        curr[j] = d;
        continue;
      }
      double best = prev[j];
      if (j > 0) best = std::min({best, prev[j - 1], curr[j - 1]});
      curr[j] = d + best;
    }
    std::swap(prev, curr);
    stale_first = prev_first;
    stale_last = prev_last;
    prev_first = lo;
    prev_last = hi;
  }
  return std::sqrt(prev[n - 1]);
}

double dtw_distance(const TimeSeries& q, const TimeSeries& c, const RKBand& band) {
  return dtw_distance(q.values(), c.values(), BandWindow(band));
}

WarpingPath dtw_path(std::span<const double> q, std::span<const double> c, const BandWindow& window) {
  const std::size_t n = window.length();
  check_lengths(q.size(), c.size(), n);

  std::vector<double> gamma(n * n, kInf);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return gamma[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = window.first(i); j <= window.last(i); ++j) {
      if (j < i && !window.allows(i, j)) continue;
      const double d = sq(q[i] - c[j]);
      if (i == 0 && j == 0) {
        at(i, j) = d;
        continue;
      }
      double best = kInf;
      if (i > 0) best = at(i - 1, j);
      if (j > 0) best = std::min(best, at(i, j - 1));
      if (i > 0 && j > 0) best = std::min(best, at(i - 1, j - 1));
      at(i, j) = d + best;
    }
  }

  WarpingPath path;
  path.reserve(2 * n);
  std::size_t i = n - 1;
  std::size_t j = n - 1;
  path.push_back({i, j});
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = at(i - 1, j - 1);
      const double left = at(i, j - 1);
      const double down = at(i - 1, j);
      if (diag <= left && diag <= down) {
        --i;
        --j;
      } else if (left <= down) {
        --j;
      } else {
        --i;
      }
    }
    path.push_back({i, j});
  }
  std::reverse(path.begin(), path.end());
  return path;
}

WarpingPath dtw_path(const TimeSeries& q, const TimeSeries& c, const RKBand& band) {
  return dtw_path(q.values(), c.values(), BandWindow(band));
}

Envelope keogh_envelope(std::span<const double> c, const BandWindow& window) {
  const std::size_t n = window.length();
  check_lengths(c.size(), c.size(), n);
  Envelope env{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    double hi = c[i];
    double lo = c[i];
    for (std::size_t j = window.first(i); j <= window.last(i); ++j) {
      if (j < i && !window.allows(i, j)) continue;
      hi = std::max(hi, c[j]);
      lo = std::min(lo, c[j]);
    }
    env.upper[i] = hi;
    env.lower[i] = lo;
  }
  return env;
}

double lb_keogh(std::span<const double> q, const Envelope& envelope) {
  check_lengths(q.size(), envelope.upper.size(), envelope.lower.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] > envelope.upper[i]) {
      sum += sq(q[i] - envelope.upper[i]);
    } else if (q[i] < envelope.lower[i]) {
      sum += sq(q[i] - envelope.lower[i]);
    }
  }
  return std::sqrt(sum);
}

double lb_keogh(const TimeSeries& q, const TimeSeries& c, const RKBand& band) {
  const BandWindow window(band);
  check_lengths(q.length(), c.length(), band.length());
  return lb_keogh(q.values(), keogh_envelope(c.values(), window));
}

}  // namespace rkband
