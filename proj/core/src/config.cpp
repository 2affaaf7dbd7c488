#include "coordyn/config.hpp"

#include <set>

#include <fmt/format.h>

#include "coordyn/error.hpp"
#include "coordyn/export.hpp"

namespace coordyn {

std::string_view format_name(EventFormat format) { return format == EventFormat::csv ? "csv" : "jsonl"; }

void validate(const PipelineConfig& c) {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) throw InputError(fmt::format("invalid config: {}", what));
  };
  require(c.window_days >= 1, "window_days must be at least 1");
  require(c.offset_days >= 1, "offset_days must be at least 1");
  require(c.top_fraction > 0.0 && c.top_fraction <= 1.0, "top_fraction must lie in (0, 1]");
  require(c.max_bad_fraction >= 0.0 && c.max_bad_fraction <= 1.0, "max_bad_fraction must lie in [0, 1]");
  require(c.alpha > 0.0 && c.alpha < 1.0, "alpha must lie in (0, 1)");
  require(c.gamma > 0.0, "gamma must be positive");
  require(c.omega >= 0.0, "omega must be non-negative");
  require(c.rbo_persistence > 0.0 && c.rbo_persistence < 1.0, "rbo_persistence must lie in (0, 1)");
  require(c.min_active_windows >= 1, "min_active_windows must be at least 1");
  require(c.alignment_half_width >= 1, "alignment_half_width must be at least 1");
  require(c.threads >= 1, "threads must be at least 1");
  require(!c.output_dir.empty(), "output_dir must not be empty");
  if (c.span) {
    require(c.span->length() >= static_cast<Seconds>(c.window_days) * kSecondsPerDay,
            "span must be at least window_days long");
  }
  for (const auto& [tag, value] : c.polarity_seeds) {
    require(value >= -1 && value <= 1, "polarity_seeds values must be -1, 0 or 1");
  }
}

void to_json(nlohmann::json& j, const PipelineConfig& c) {
  j = nlohmann::json{{"input", c.input},
                     {"format", format_name(c.format)},
                     {"window_days", c.window_days},
                     {"offset_days", c.offset_days},
                     {"top_fraction", c.top_fraction},
                     {"max_bad_fraction", c.max_bad_fraction},
                     {"alpha", c.alpha},
                     {"gamma", c.gamma},
                     {"omega", c.omega},
                     {"seed", c.seed},
                     {"rbo_persistence", c.rbo_persistence},
                     {"min_active_windows", c.min_active_windows},
                     {"alignment_half_width", c.alignment_half_width},
                     {"polarity_seeds", c.polarity_seeds},
                     {"output_dir", c.output_dir},
                     {"threads", c.threads}};
  if (c.span) {
    j["span"] = {{"start", format_timestamp(c.span->start)}, {"end", format_timestamp(c.span->end)}};
  } else {
    j["span"] = nullptr;
  }
}

namespace {

Seconds span_bound(const nlohmann::json& v, bool inclusive_date) {
  if (v.is_number_integer()) return v.get<Seconds>();
  const auto text = v.get<std::string>();
  const Seconds t = parse_timestamp(text);
  return inclusive_date && is_date_only(text) ? t + kSecondsPerDay : t;
}

}  // namespace

void from_json(const nlohmann::json& j, PipelineConfig& c) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  static const std::set<std::string> known{
      "input", "format",          "span",         "window_days",        "offset_days",          "top_fraction",
      "max_bad_fraction", "alpha", "gamma",       "omega",              "seed",                 "rbo_persistence",
      "min_active_windows",       "alignment_half_width", "polarity_seeds", "output_dir",        "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw InputError(fmt::format("unknown config key '{}'", key));
  }
  try {
    c.input = j.value("input", c.input);
    if (j.contains("format")) c.format = parse_event_format(j.at("format").get<std::string>());
    if (j.contains("span")) {
      const auto& s = j.at("span");
      if (s.is_null()) {
        c.span.reset();
      } else {
        c.span = TimeSpan{span_bound(s.at("start"), false), span_bound(s.at("end"), true)};
      }
    }
    c.window_days = j.value("window_days", c.window_days);
    c.offset_days = j.value("offset_days", c.offset_days);
    c.top_fraction = j.value("top_fraction", c.top_fraction);
    c.max_bad_fraction = j.value("max_bad_fraction", c.max_bad_fraction);
    c.alpha = j.value("alpha", c.alpha);
    c.gamma = j.value("gamma", c.gamma);
    c.omega = j.value("omega", c.omega);
    c.seed = j.value("seed", c.seed);
    c.rbo_persistence = j.value("rbo_persistence", c.rbo_persistence);
    c.min_active_windows = j.value("min_active_windows", c.min_active_windows);
    c.alignment_half_width = j.value("alignment_half_width", c.alignment_half_width);
    if (j.contains("polarity_seeds")) c.polarity_seeds = j.at("polarity_seeds").get<std::map<std::string, int>>();
    c.output_dir = j.value("output_dir", c.output_dir);
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(fmt::format("invalid config: {}", e.what()));
  }
  validate(c);
}

namespace {

nlohmann::json read_json(const std::string& path) {
  auto in = open_input(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(fmt::format("'{}' is not valid JSON: {}", path, e.what()));
  }
}

}  // namespace

PipelineConfig load_config(const std::string& path) {
  PipelineConfig c;
  from_json(read_json(path), c);
  return c;
}

void save_config(const PipelineConfig& config, const std::string& path) {
  auto out = open_output(path);
  out << nlohmann::json(config).dump(2) << '\n';
}

std::map<std::string, int> load_seeds(const std::string& path) {
  const auto j = read_json(path);
  const auto& table = j.is_object() && j.contains("seeds") ? j.at("seeds") : j;
  std::map<std::string, int> seeds;
  try {
    seeds = table.get<std::map<std::string, int>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(fmt::format("'{}' does not map hashtags to leanings: {}", path, e.what()));
  }
  for (const auto& [tag, value] : seeds) {
    if (value < -1 || value > 1) throw InputError(fmt::format("seed '{}' must be -1, 0 or 1", tag));
  }
  return seeds;
}

}  // namespace coordyn
