#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "foveal/filters.hpp"

namespace foveal::cli {

enum class FilterMode { Crop, Gbb, Fovea };

/// Throws ValidationError for anything but crop, gbb or fovea.
FilterMode parse_filter_mode(const std::string& name);

struct FilterSettings {
  FilterMode mode = FilterMode::Fovea;
  double sigma1 = kDefaultFoveaSigma1;
  int levels = kDefaultFoveaLevels;
  double sigma = kDefaultGbbSigma;

  void validate() const;
};

AttentionFilter make_filter(const FilterSettings& settings, const BoundingBox& box);

struct PrepConfig {
  std::filesystem::path annotations;
  std::filesystem::path frames;
  std::filesystem::path out;
  FilterSettings filter;
  int jobs = 1;
  std::optional<std::filesystem::path> label_map;
};

struct PrepSummary {
  std::size_t annotations = 0;
  std::size_t items = 0;  // distinct (video, timestamp, person)
  std::size_t written = 0;
  std::size_t failed = 0;
};

/// For every annotated person on every keyframe: loads
/// `<frames>/<video>_<timestamp>.png`, filters it around the person's box and
/// writes `<out>/<video>_<timestamp>_<person>.png`, then writes
/// `<out>/manifest.csv` linking each output to its labels. Per-item failures
/// are logged to `log` and counted; the remaining items still run. Outputs do
/// not depend on `jobs`.
PrepSummary prep_pipeline(const PrepConfig& config, std::ostream& log);

}  // namespace foveal::cli
