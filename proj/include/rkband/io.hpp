#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rkband/band.hpp"
#include "rkband/series.hpp"

namespace rkband {

/// How the first token of each line is treated.
enum class LabelMode {
  Labeled,
  Unlabeled,
  /// Requires an expected length L: lines of L tokens are unlabeled, lines of
  /// L + 1 tokens carry a label. The first non-blank line decides for the file.
  Detect,
};

struct SeriesFile {
  std::vector<TimeSeries> series;
  std::optional<std::vector<Label>> labels;
};

/// One series per line, tokens separated by whitespace and/or commas. Blank
/// lines are ignored. Errors are Parse errors naming "source:line".
SeriesFile parse_series(std::istream& in, const std::string& source, LabelMode mode,
                        std::optional<std::size_t> expected_length = std::nullopt);
SeriesFile read_series_file(const std::string& path, LabelMode mode,
                            std::optional<std::size_t> expected_length = std::nullopt);

/// Throws Parse when the file is empty or unlabeled.
LabeledDataset to_dataset(SeriesFile file, const std::string& source);

/// {"n": <length>, "bands": {"<label>": [r_1, ..., r_n], ...}}
std::string band_set_to_json(const BandSet& bands);
BandSet band_set_from_json(const std::string& text, const std::string& source);
BandSet read_band_file(const std::string& path);
void write_band_file(const std::string& path, const BandSet& bands);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace rkband
