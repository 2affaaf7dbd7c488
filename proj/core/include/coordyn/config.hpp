#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "coordyn/ingest.hpp"

namespace coordyn {

/// Every tunable of a pipeline run. JSON keys match the member names.
struct PipelineConfig {
  std::string input;
  EventFormat format = EventFormat::jsonl;
  /// Dataset span; inferred from the events when absent. In JSON, a bare
  /// date as `end` includes that whole day.
  std::optional<TimeSpan> span;
  int window_days = 7;
  int offset_days = 1;
  double top_fraction = 0.01;
  double max_bad_fraction = 0.01;
  double alpha = 0.05;
  double gamma = 1.0;
  double omega = 1.0;
  std::uint64_t seed = 42;
  double rbo_persistence = 0.9;
  int min_active_windows = 1;
  /// Windows on each side of an influenced user's final shift.
  int alignment_half_width = 3;
  /// Hashtag leaning seeds (-1, 0, +1); polarity is skipped when empty.
  std::map<std::string, int> polarity_seeds;
  std::string output_dir = "coordyn-out";
  int threads = 1;
};

/// Throws InputError naming the first out-of-range field.
void validate(const PipelineConfig& config);

void to_json(nlohmann::json& j, const PipelineConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, PipelineConfig& config);

PipelineConfig load_config(const std::string& path);
void save_config(const PipelineConfig& config, const std::string& path);

/// Reads hashtag seeds from a JSON object mapping tag to leaning, or from
/// any object with such a map under "seeds" (e.g. a synth truth.json).
std::map<std::string, int> load_seeds(const std::string& path);

std::string_view format_name(EventFormat format);

}  // namespace coordyn
