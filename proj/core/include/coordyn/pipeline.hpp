#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coordyn/config.hpp"
#include "coordyn/synth.hpp"

namespace coordyn {

/// File names inside a run directory. Stages communicate only through
/// these files, so any stage can be rerun on its own.
namespace artifact {
inline constexpr const char* events = "events.csv";  // superspreader events in span
inline constexpr const char* windows = "windows.csv";
inline constexpr const char* layers_dir = "layers";
inline constexpr const char* partition = "partition.csv";
inline constexpr const char* static_partition = "static_partition.csv";
inline constexpr const char* detection = "detection.json";
inline constexpr const char* metrics = "metrics.json";
inline constexpr const char* shifts = "shifts.csv";
inline constexpr const char* similarity = "similarity_matrix.csv";
inline constexpr const char* polarity = "polarity.csv";
inline constexpr const char* archetypes = "archetypes.csv";
inline constexpr const char* trends = "trends.csv";
inline constexpr const char* overlap = "overlap_matrix.csv";
inline constexpr const char* manifest = "manifest.json";
inline constexpr const char* score = "score.json";

/// layers/layer_007.csv for window 7.
std::string layer_file(int window_index);
}  // namespace artifact

/// Outcome of one stage, as recorded in the manifest.
struct StageReport {
  std::string stage;
  double seconds = 0.0;
  std::vector<std::string> outputs;  // paths relative to the run directory
  nlohmann::json summary;
};

/// Each stage reads its inputs from config.output_dir (ingest reads
/// config.input), writes its outputs there and records itself in
/// manifest.json. Bad or missing inputs raise InputError prefixed with the
/// stage name; other failures raise StageError. A failed stage is recorded
/// in the manifest, which is then flagged partial.
StageReport run_ingest(const PipelineConfig& config);
StageReport run_layers(const PipelineConfig& config);
StageReport run_detect(const PipelineConfig& config);
StageReport run_analyze(const PipelineConfig& config);

/// ingest, layers, detect and analyze in order. Returns the manifest.
nlohmann::json run_pipeline(const PipelineConfig& config);

/// Writes events.csv, truth/ and a config.json that runs the pipeline on
/// them into `directory`.
StageReport run_synth(const ScenarioSpec& spec, const std::string& directory);

/// Scores partition.csv, shifts.csv and archetypes.csv of `run_directory`
/// against the ground truth in `truth_directory`; writes score.json there.
StageReport run_score(const std::string& truth_directory, const std::string& run_directory);

/// Library, dependency and compiler versions.
nlohmann::json version_info();

}  // namespace coordyn
