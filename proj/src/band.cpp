#include "rkband/band.hpp"

#include <algorithm>
#include <string>

namespace rkband {

RKBand::RKBand(std::vector<int> widths) : widths_(std::move(widths)) {
  const auto n = static_cast<long long>(widths_.size());
  if (n == 0) throw Error(ErrorCode::Configuration, "band must have at least one width");
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    if (widths_[i] < 0 || widths_[i] > n) {
      throw Error(ErrorCode::Configuration, "band width " + std::to_string(widths_[i]) +
                                                " at index " + std::to_string(i) +
                                                " outside [0, " + std::to_string(n) + "]");
    }
  }
}

RKBand RKBand::uniform(std::size_t n, int width) {
  return RKBand(std::vector<int>(n, width));
}

bool RKBand::allows(std::size_t i, std::size_t j) const {
  const std::size_t n = widths_.size();
  if (i >= n || j >= n) {
    throw Error(ErrorCode::Index, "cell (" + std::to_string(i) + ", " + std::to_string(j) +
                                      ") outside a band of length " + std::to_string(n));
  }
  if (j >= i) return j - i <= static_cast<std::size_t>(widths_[i]);
  return i - j <= static_cast<std::size_t>(widths_[j]);
}

RKBand sakoe_chiba(std::size_t n, int width_percent) {
  if (width_percent < 0 || width_percent > 100) {
    throw Error(ErrorCode::Configuration,
                "warping window " + std::to_string(width_percent) + "% outside [0, 100]");
  }
  // round half up on integers: floor((n * p + 50) / 100)
  const auto width = std::min<std::size_t>((n * static_cast<std::size_t>(width_percent) + 50) / 100, n);
  return RKBand::uniform(n, static_cast<int>(width));
}

AdjustResult adjust_segment(const RKBand& band, std::size_t start, std::size_t end,
                            Adjustment direction, int bound) {
  const std::size_t n = band.length();
  if (start > end || end >= n) {
    throw Error(ErrorCode::Index, "segment [" + std::to_string(start) + ", " +
                                      std::to_string(end) + "] invalid for a band of length " +
                                      std::to_string(n));
  }
  const auto seg = band.widths().subspan(start, end - start + 1);
  if (direction == Adjustment::Grow) {
    const int limit = std::min(bound, static_cast<int>(n));
    if (std::any_of(seg.begin(), seg.end(), [&](int r) { return r + 1 > limit; })) {
      return {band, false};
    }
  } else if (std::any_of(seg.begin(), seg.end(), [](int r) { return r - 1 < 0; })) {
    return {band, false};
  }

  std::vector<int> widths(band.widths().begin(), band.widths().end());
  const int step = direction == Adjustment::Grow ? 1 : -1;
  for (std::size_t i = start; i <= end; ++i) widths[i] += step;
  return {RKBand(std::move(widths)), true};
}

BandSet::BandSet(std::size_t length, std::map<Label, RKBand> bands)
    : length_(length), bands_(std::move(bands)) {
  for (const auto& [label, band] : bands_) {
    if (band.length() != length_) {
      throw Error(ErrorCode::Configuration, "band for class " + std::to_string(label) +
                                                " has length " + std::to_string(band.length()) +
                                                ", expected " + std::to_string(length_));
    }
  }
}

BandSet BandSet::uniform(const LabeledDataset& data, const RKBand& band) {
  std::map<Label, RKBand> bands;
  for (Label c : data.classes()) bands.emplace(c, band);
  return BandSet(band.length(), std::move(bands));
}

const RKBand& BandSet::at(Label label) const {
  auto it = bands_.find(label);
  if (it == bands_.end()) {
    throw Error(ErrorCode::Configuration, "no band for class " + std::to_string(label));
  }
  return it->second;
}

void BandSet::set(Label label, RKBand band) {
  if (band.length() != length_) {
    throw Error(ErrorCode::Configuration, "band length " + std::to_string(band.length()) +
                                              " does not match band set length " +
                                              std::to_string(length_));
  }
  bands_.insert_or_assign(label, std::move(band));
}

void BandSet::check_covers(const LabeledDataset& data) const {
  if (length_ != data.series_length()) {
    throw Error(ErrorCode::Configuration, "band length " + std::to_string(length_) +
                                              " does not match series length " +
                                              std::to_string(data.series_length()));
  }
  for (Label c : data.classes()) at(c);
}

}  // namespace rkband
