// coordyn: command-line front end for the pipeline stages.
// Exit codes: 0 success, 1 input error, 2 stage failure.

#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "coordyn/config.hpp"
#include "coordyn/error.hpp"
#include "coordyn/export.hpp"
#include "coordyn/pipeline.hpp"
#include "coordyn/synth.hpp"
#include "coordyn/timeutil.hpp"

namespace {

using namespace coordyn;

constexpr int kInputError = 1;
constexpr int kStageFailure = 2;

void log(const std::string& line) { std::cerr << "coordyn: " << line << '\n'; }

void log_stage(const StageReport& r) {
  log(fmt::format("{} finished in {:.2f} s; wrote {} file(s)", r.stage, r.seconds, r.outputs.size()));
  if (!r.summary.empty()) log(fmt::format("{} summary: {}", r.stage, r.summary.dump()));
}

/// Pipeline flags; each one set on the command line overrides the config file.
struct ConfigFlags {
  std::string config_path;
  std::optional<std::string> input, format, span_start, span_end, seeds, output;
  std::optional<int> window_days, offset_days, min_active_windows, half_width, threads;
  std::optional<double> top_fraction, max_bad_fraction, alpha, gamma, omega, persistence;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App& app) {
    app.add_option("-c,--config", config_path, "JSON config file");
    app.add_option("-i,--input", input, "Event log (JSONL or CSV)");
    app.add_option("--format", format, "Event log format: jsonl or csv");
    app.add_option("--span-start", span_start, "Dataset start (ISO-8601 or epoch seconds)");
    app.add_option("--span-end", span_end, "Dataset end; a bare date includes that day");
    app.add_option("-d,--window-days", window_days, "Window duration in days");
    app.add_option("--offset-days", offset_days, "Offset between window starts in days");
    app.add_option("--top-fraction", top_fraction, "Fraction of most active users kept");
    app.add_option("--max-bad-fraction", max_bad_fraction, "Tolerated fraction of malformed rows");
    app.add_option("--alpha", alpha, "Backbone significance level");
    app.add_option("--gamma", gamma, "Resolution parameter");
    app.add_option("--omega", omega, "Inter-layer coupling strength");
    app.add_option("--seed", seed, "Random seed for community detection");
    app.add_option("--rbo-persistence", persistence, "Rank-biased overlap persistence");
    app.add_option("--min-active-windows", min_active_windows, "Minimum active windows for an archetype");
    app.add_option("--alignment-half-width", half_width, "Windows on each side of an aligned shift");
    app.add_option("--seeds", seeds, "JSON file of hashtag leaning seeds");
    app.add_option("-o,--output", output, "Run directory");
    app.add_option("-j,--threads", threads, "Worker threads for per-window work");
  }

  PipelineConfig resolve() const {
    PipelineConfig c = config_path.empty() ? PipelineConfig{} : load_config(config_path);
    if (input) c.input = *input;
    if (format) c.format = parse_event_format(*format);
    if (span_start || span_end) {
      TimeSpan span = c.span.value_or(TimeSpan{});
      if (span_start) span.start = parse_timestamp(*span_start);
      if (span_end) span.end = parse_timestamp(*span_end) + (is_date_only(*span_end) ? kSecondsPerDay : 0);
      if (!c.span && !(span_start && span_end)) throw InputError("set both --span-start and --span-end");
      c.span = span;
    }
    if (window_days) c.window_days = *window_days;
    if (offset_days) c.offset_days = *offset_days;
    if (top_fraction) c.top_fraction = *top_fraction;
    if (max_bad_fraction) c.max_bad_fraction = *max_bad_fraction;
    if (alpha) c.alpha = *alpha;
    if (gamma) c.gamma = *gamma;
    if (omega) c.omega = *omega;
    if (seed) c.seed = *seed;
    if (persistence) c.rbo_persistence = *persistence;
    if (min_active_windows) c.min_active_windows = *min_active_windows;
    if (half_width) c.alignment_half_width = *half_width;
    if (seeds) c.polarity_seeds = load_seeds(*seeds);
    if (output) c.output_dir = *output;
    if (threads) c.threads = *threads;
    validate(c);
    return c;
  }
};

int guarded(const std::function<void()>& action) {
  try {
    action();
    return 0;
  } catch (const InputError& e) {
    log(fmt::format("input error: {}", e.what()));
    return kInputError;
  } catch (const StageError& e) {
    log(e.what());
    return kStageFailure;
  } catch (const std::exception& e) {
    log(fmt::format("failure: {}", e.what()));
    return kStageFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detects and analyses time-varying coordinated behaviour in retweet logs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version_info()["coordyn"]));

  using Stage = StageReport (*)(const PipelineConfig&);
  struct StageCommand {
    const char* name;
    const char* help;
    Stage run;
  };
  const StageCommand stages[] = {
      {"ingest", "Parse events, select superspreaders and write windows", run_ingest},
      {"layers", "Build backboned similarity layers per window", run_layers},
      {"detect", "Detect dynamic and static communities", run_detect},
      {"analyze", "Compute analytics and write the report bundle", run_analyze},
  };

  std::function<int()> command;
  ConfigFlags flags[std::size(stages) + 1];
  for (std::size_t i = 0; i < std::size(stages); ++i) {
    auto* sub = app.add_subcommand(stages[i].name, stages[i].help);
    flags[i].attach(*sub);
    sub->callback([&, i] {
      command = [&, i] { return guarded([&] { log_stage(stages[i].run(flags[i].resolve())); }); };
    });
  }

  auto* run = app.add_subcommand("run", "Run ingest, layers, detect and analyze");
  auto& run_flags = flags[std::size(stages)];
  run_flags.attach(*run);
  run->callback([&] {
    command = [&] {
      return guarded([&] {
        const auto config = run_flags.resolve();
        const auto manifest = run_pipeline(config);
        for (const auto& stage : stages) {
          log(fmt::format("{} finished in {:.2f} s", stage.name, manifest["stages"][stage.name].value("seconds", 0.0)));
        }
        log(fmt::format("{} windows; report bundle in {}", manifest.value("windows", 0), config.output_dir));
      });
    };
  });

  std::string scenario_path, synth_dir = "coordyn-synth";
  std::optional<std::uint64_t> synth_seed;
  std::optional<double> noise, drift;
  auto* synth = app.add_subcommand("synth", "Generate a planted scenario with ground truth");
  synth->add_option("-s,--scenario", scenario_path, "Scenario JSON; defaults when omitted");
  synth->add_option("-o,--output", synth_dir, "Output directory");
  synth->add_option("--seed", synth_seed, "Scenario seed");
  synth->add_option("--noise", noise, "Cross-community retweet probability");
  synth->add_option("--drift", drift, "Signed bias of shift destinations by leaning");
  synth->callback([&] {
    command = [&] {
      return guarded([&] {
        ScenarioSpec spec;
        if (!scenario_path.empty()) {
          auto in = open_input(scenario_path);
          try {
            from_json(nlohmann::json::parse(in), spec);
          } catch (const nlohmann::json::exception& e) {
            throw InputError(fmt::format("'{}' is not valid JSON: {}", scenario_path, e.what()));
          }
        }
        if (synth_seed) spec.seed = *synth_seed;
        if (noise) spec.noise = *noise;
        if (drift) spec.drift = *drift;
        validate(spec);
        log_stage(run_synth(spec, synth_dir));
        log(fmt::format("run the pipeline with: coordyn run --config {}/config.json", synth_dir));
      });
    };
  });

  std::string truth_dir, run_dir;
  auto* score = app.add_subcommand("score", "Score a run against planted ground truth");
  score->add_option("-t,--truth", truth_dir, "Ground-truth directory written by synth")->required();
  score->add_option("-r,--run", run_dir, "Run directory with partition, shifts and archetypes")->required();
  score->callback([&] {
    command = [&] {
      return guarded([&] {
        log_stage(run_score(truth_dir, run_dir));
      });
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  return command ? command() : 0;
}
