#include "rkband/io.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <unistd.h>

#include "json.hpp"

namespace rkband {
namespace {

Error parse_error(const std::string& source, std::size_t line, const std::string& what) {
  return Error(ErrorCode::Parse, source + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : line) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::optional<double> to_real(const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

SeriesFile parse_series(std::istream& in, const std::string& source, LabelMode mode,
                        std::optional<std::size_t> expected_length) {
  if (mode == LabelMode::Detect && !expected_length) {
    throw Error(ErrorCode::Configuration, "label detection needs an expected series length");
  }
  SeriesFile out;
  std::optional<bool> labeled;
  if (mode == LabelMode::Labeled) labeled = true;
  if (mode == LabelMode::Unlabeled) labeled = false;
  std::optional<std::size_t> length = expected_length;
  std::vector<Label> labels;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (!labeled) {
      if (tokens.size() == *expected_length + 1) {
        labeled = true;
      } else if (tokens.size() == *expected_length) {
        labeled = false;
      } else {
        throw parse_error(source, lineno,
                          "expected " + std::to_string(*expected_length) + " samples (or a label plus " +
                              std::to_string(*expected_length) + " samples), got " +
                              std::to_string(tokens.size()) + " tokens");
      }
    }

    std::size_t first = 0;
    if (*labeled) {
      const auto value = to_real(tokens[0]);
      if (!value || *value != std::floor(*value) ||
          std::abs(*value) > static_cast<double>(std::numeric_limits<Label>::max())) {
        throw parse_error(source, lineno, "class label '" + tokens[0] + "' is not an integer");
      }
      labels.push_back(static_cast<Label>(*value));
      first = 1;
    }

    const std::size_t count = tokens.size() - first;
    if (!length) length = count;
    if (count != *length) {
      throw parse_error(source, lineno, "series has " + std::to_string(count) +
                                            " samples, expected " + std::to_string(*length));
    }
    if (count < 2) throw parse_error(source, lineno, "series needs at least 2 samples");

    std::vector<double> values;
    values.reserve(count);
    for (std::size_t k = first; k < tokens.size(); ++k) {
      const auto value = to_real(tokens[k]);
      if (!value) throw parse_error(source, lineno, "'" + tokens[k] + "' is not a finite number");
      values.push_back(*value);
    }
    out.series.emplace_back(std::move(values));
  }
  if (labeled && *labeled) out.labels = std::move(labels);
  return out;
}

SeriesFile read_series_file(const std::string& path, LabelMode mode,
                            std::optional<std::size_t> expected_length) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return parse_series(in, path, mode, expected_length);
}

LabeledDataset to_dataset(SeriesFile file, const std::string& source) {
  if (file.series.empty()) throw Error(ErrorCode::Parse, source + ": no series");
  if (!file.labels) throw Error(ErrorCode::Parse, source + ": series carry no class labels");
  return LabeledDataset(std::move(file.series), std::move(*file.labels));
}

std::string band_set_to_json(const BandSet& bands) {
  nlohmann::ordered_json doc;
  doc["n"] = bands.length();
  auto& members = doc["bands"] = nlohmann::ordered_json::object();
  for (const auto& [label, band] : bands.bands()) {
    members[std::to_string(label)] = std::vector<int>(band.widths().begin(), band.widths().end());
  }
  return doc.dump(2) + "\n";
}

BandSet band_set_from_json(const std::string& text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, source + ": " + e.what());
  }
  try {
    const auto n = doc.at("n").get<std::size_t>();
    std::map<Label, RKBand> bands;
    for (const auto& [key, value] : doc.at("bands").items()) {
      std::size_t used = 0;
      const int label = std::stoi(key, &used);
      if (used != key.size()) throw Error(ErrorCode::Parse, source + ": bad class label '" + key + "'");
      bands.emplace(label, RKBand(value.get<std::vector<int>>()));
    }
    if (bands.empty()) throw Error(ErrorCode::Parse, source + ": band set has no classes");
    return BandSet(n, std::move(bands));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, source + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Configuration) throw Error(ErrorCode::Parse, source + ": " + e.what());
    throw;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::Parse, source + ": malformed band set");
  }
}

BandSet read_band_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return band_set_from_json(buffer.str(), path);
}

void write_band_file(const std::string& path, const BandSet& bands) {
  write_file_atomic(path, band_set_to_json(bands));
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp);
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::Io, "failed writing " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot move " + tmp + " to " + path);
  }
}

}  // namespace rkband
