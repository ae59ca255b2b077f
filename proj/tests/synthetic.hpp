#pragma once

// Seeded generators for test data.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "rkband/band.hpp"
#include "rkband/series.hpp"

namespace synth {

using Rng = std::mt19937_64;

inline std::vector<double> random_values(Rng& rng, std::size_t n, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

inline std::vector<int> random_widths(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> u(0, static_cast<int>(n));
  std::vector<int> r(n);
  for (auto& x : r) x = u(rng);
  return r;
}

/// Random band biased towards narrow widths, so holes below the diagonal
/// show up often.
inline std::vector<int> random_narrow_widths(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<int> any(0, static_cast<int>(n));
  std::uniform_int_distribution<int> small(0, std::min(2, static_cast<int>(n)));
  std::vector<int> r(n);
  for (auto& x : r) x = coin(rng) == 0 ? any(rng) : small(rng);
  return r;
}

/// Classes are noisy copies of one random prototype each.
inline rkband::LabeledDataset random_dataset(Rng& rng, std::size_t classes, std::size_t per_class,
                                             std::size_t n, double noise = 0.5) {
  std::normal_distribution<double> eps(0.0, noise);
  std::vector<rkband::TimeSeries> series;
  std::vector<rkband::Label> labels;
  for (std::size_t c = 0; c < classes; ++c) {
    const auto proto = random_values(rng, n);
    for (std::size_t k = 0; k < per_class; ++k) {
      auto v = proto;
      for (auto& x : v) x += eps(rng);
      series.emplace_back(std::move(v));
      labels.push_back(static_cast<rkband::Label>(c + 1));
    }
  }
  return rkband::LabeledDataset(std::move(series), std::move(labels));
}

/// Cylinder (1), bell (2) and funnel (3) shapes with a random onset and
/// duration and unit Gaussian noise, scaled to length n.
inline std::vector<double> cbf(Rng& rng, int shape, std::size_t n) {
  const double len = static_cast<double>(n);
  std::uniform_real_distribution<double> onset(len / 8.0, len / 4.0);
  std::uniform_real_distribution<double> duration(len / 4.0, 3.0 * len / 4.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double a = std::floor(onset(rng));
  const double b = std::min(len - 1.0, a + std::floor(duration(rng)));
  const double eta = gauss(rng);
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double x = static_cast<double>(t);
    const double inside = (x >= a && x <= b) ? 1.0 : 0.0;
    double shape_value = inside;
    if (shape == 2) shape_value = inside * (x - a) / (b - a);
    if (shape == 3) shape_value = inside * (b - x) / (b - a);
    v[t] = (6.0 + eta) * shape_value + gauss(rng);
  }
  return v;
}

inline rkband::LabeledDataset cbf_dataset(Rng& rng, std::size_t per_class, std::size_t n) {
  std::vector<rkband::TimeSeries> series;
  std::vector<rkband::Label> labels;
  for (std::size_t k = 0; k < per_class; ++k) {
    for (int shape = 1; shape <= 3; ++shape) {
      series.push_back(rkband::znormalize(rkband::TimeSeries(cbf(rng, shape, n))));
      labels.push_back(shape);
    }
  }
  return rkband::LabeledDataset(std::move(series), std::move(labels));
}

inline double bump(double t, double center, double width) {
  const double z = (t - center) / width;
  return std::exp(-0.5 * z * z);
}

/// Class 1: one bump whose center jitters by up to `shift` samples inside
/// [lo, hi). Class 2: two bumps at fixed places. Everything else is flat
/// with light noise.
inline rkband::LabeledDataset shifted_bump_dataset(Rng& rng, std::size_t per_class, std::size_t n,
                                                   double shift) {
  std::uniform_real_distribution<double> jitter(-shift, shift);
  std::normal_distribution<double> noise(0.0, 0.05);
  const double len = static_cast<double>(n);
  std::vector<rkband::TimeSeries> series;
  std::vector<rkband::Label> labels;
  for (std::size_t k = 0; k < per_class; ++k) {
    const double c1 = 0.3 * len + jitter(rng);
    std::vector<double> one(n), two(n);
    const double c2 = 0.3 * len + jitter(rng);
    for (std::size_t t = 0; t < n; ++t) {
      const double x = static_cast<double>(t);
      one[t] = bump(x, c1, len / 20.0) + noise(rng);
      two[t] = bump(x, c2, len / 20.0) + 0.8 * bump(x, 0.75 * len, len / 20.0) + noise(rng);
    }
    series.emplace_back(std::move(one));
    labels.push_back(1);
    series.emplace_back(std::move(two));
    labels.push_back(2);
  }
  return rkband::LabeledDataset(std::move(series), std::move(labels));
}

/// Sine (class 1) against the same sine shifted by a quarter period with
/// random phase jitter (class 2).
inline rkband::LabeledDataset sine_dataset(Rng& rng, std::size_t per_class, std::size_t n) {
  std::uniform_real_distribution<double> jitter(-0.4, 0.4);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::vector<rkband::TimeSeries> series;
  std::vector<rkband::Label> labels;
  const double pi = std::acos(-1.0);
  for (std::size_t k = 0; k < per_class; ++k) {
    for (int cls = 1; cls <= 2; ++cls) {
      const double phase = jitter(rng) + (cls == 2 ? pi / 2.0 : 0.0);
      std::vector<double> v(n);
      for (std::size_t t = 0; t < n; ++t) {
        v[t] = std::sin(2.0 * pi * static_cast<double>(t) / static_cast<double>(n) * 2.0 + phase) +
               noise(rng);
      }
      series.emplace_back(std::move(v));
      labels.push_back(cls);
    }
  }
  return rkband::LabeledDataset(std::move(series), std::move(labels));
}

}  // namespace synth
