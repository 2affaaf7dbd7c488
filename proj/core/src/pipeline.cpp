#include "coordyn/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

#include <boost/version.hpp>
#include <fmt/format.h>

#include "coordyn/analytics.hpp"
#include "coordyn/csv.hpp"
#include "coordyn/dyncomm.hpp"
#include "coordyn/error.hpp"
#include "coordyn/export.hpp"
#include "coordyn/multiplex.hpp"
#include "coordyn/score.hpp"
#include "coordyn/simnet.hpp"

namespace coordyn {

namespace fs = std::filesystem;

std::string artifact::layer_file(int window_index) {
  return fmt::format("{}/layer_{:03}.csv", layers_dir, window_index);
}

nlohmann::json version_info() {
  return {{"coordyn", COORDYN_VERSION},
          {"fmt", FMT_VERSION},
          {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                                        NLOHMANN_JSON_VERSION_PATCH)},
          {"boost", BOOST_LIB_VERSION},
          {"compiler", __VERSION__}};
}

namespace {

std::string in_dir(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

// ---- manifest -------------------------------------------------------------

nlohmann::json load_manifest(const std::string& dir) {
  const auto path = in_dir(dir, artifact::manifest);
  if (!fs::exists(path)) return nlohmann::json::object();
  try {
    auto in = open_input(path);
    auto j = nlohmann::json::parse(in);
    if (j.is_object()) return j;
  } catch (const std::exception&) {
  }
  return nlohmann::json::object();
}

void record_stage(const PipelineConfig& config, const std::string& stage, const nlohmann::json& entry) {
  fs::create_directories(config.output_dir);
  auto manifest = load_manifest(config.output_dir);
  manifest["config"] = config;
  manifest["seed"] = config.seed;
  manifest["versions"] = version_info();
  manifest["stages"][stage] = entry;
  if (entry.contains("summary") && entry["summary"].contains("windows")) manifest["windows"] = entry["summary"]["windows"];
  bool partial = false;
  for (const auto& [name, s] : manifest["stages"].items()) partial = partial || s.value("status", "") != "ok";
  manifest["partial"] = partial;
  auto out = open_output(in_dir(config.output_dir, artifact::manifest));
  out << manifest.dump(2) << '\n';
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs one stage body, times it and records the outcome. Input problems stay
// InputError (prefixed with the stage); anything else becomes StageError.
StageReport staged(const PipelineConfig& config, const std::string& stage,
                   const std::function<void(StageReport&)>& body) {
  StageReport report{stage, 0.0, {}, nlohmann::json::object()};
  const auto start = Clock::now();
  auto fail = [&](const std::string& kind, const std::string& cause) {
    report.seconds = seconds_since(start);
    try {
      record_stage(config, stage,
                   {{"status", "failed"},
                    {"error", kind},
                    {"cause", cause},
                    {"seconds", report.seconds},
                    {"outputs", report.outputs}});
    } catch (const std::exception&) {
      // the original failure is more useful than a manifest write error
    }
  };
  try {
    body(report);
  } catch (const InputError& e) {
    fail("input", e.what());
    throw InputError(fmt::format("{}: {}", stage, e.what()));
  } catch (const StageError& e) {
    fail("stage", e.what());
    throw;
  } catch (const std::exception& e) {
    fail("stage", e.what());
    throw StageError(stage, e.what());
  }
  report.seconds = seconds_since(start);
  record_stage(config, stage,
               {{"status", "ok"}, {"seconds", report.seconds}, {"outputs", report.outputs}, {"summary", report.summary}});
  return report;
}

void require_artifacts(const std::string& dir, const std::vector<std::string>& names, const std::string& producer) {
  std::vector<std::string> missing;
  for (const auto& name : names) {
    if (!fs::exists(in_dir(dir, name))) missing.push_back(in_dir(dir, name));
  }
  if (missing.empty()) return;
  throw InputError(fmt::format("missing upstream artifact{} {} (run '{}' first)", missing.size() > 1 ? "s" : "",
                               fmt::join(missing, ", "), producer));
}

// ---- windows.csv ----------------------------------------------------------

void write_windows_csv(const std::string& path, const WindowedCorpus& corpus) {
  auto out = open_output(path);
  csv::Writer w(out);
  w.row({"window_index", "start", "end", "duration_days", "offset_days", "events"});
  for (const auto& win : corpus.windows) {
    w.row({std::to_string(win.index), format_timestamp(win.start), format_timestamp(win.end()),
           std::to_string(win.duration_days), std::to_string(win.offset_days),
           std::to_string(corpus.window_events[static_cast<std::size_t>(win.index)].size())});
  }
}

std::vector<WindowSpec> read_windows_csv(const std::string& path) {
  auto in = open_input(path);
  csv::Reader reader(in);
  const auto index = reader.column("window_index");
  const auto start = reader.column("start");
  const auto duration = reader.column("duration_days");
  const auto offset = reader.column("offset_days");
  std::vector<WindowSpec> windows;
  std::vector<std::string> f;
  while (reader.next(f)) {
    try {
      windows.push_back({parse_timestamp(f.at(start)), std::stoi(f.at(duration)), std::stoi(f.at(offset)),
                         std::stoi(f.at(index))});
    } catch (const std::logic_error&) {
      throw InputError(fmt::format("{} line {}: malformed window row", path, reader.line_number()));
    }
    if (windows.back().index != static_cast<int>(windows.size()) - 1) {
      throw InputError(fmt::format("{} line {}: windows must be numbered 0, 1, 2, ...", path, reader.line_number()));
    }
  }
  if (windows.empty()) throw InputError(fmt::format("{} lists no windows", path));
  return windows;
}

WindowedCorpus load_corpus(const std::string& dir) {
  ParseOptions strict;
  strict.max_bad_fraction = 0.0;
  auto events = parse_events_file(in_dir(dir, artifact::events), EventFormat::csv, strict).events;
  const auto windows = read_windows_csv(in_dir(dir, artifact::windows));
  std::set<std::string> users;
  for (const auto& ev : events) users.insert(ev.user_id);
  return window_events(events, windows, users);
}

std::vector<LayerGraph> load_layers(const std::string& dir, int window_count) {
  std::vector<std::string> names;
  for (int w = 0; w < window_count; ++w) names.push_back(artifact::layer_file(w));
  require_artifacts(dir, names, "layers");
  std::vector<LayerGraph> layers;
  for (int w = 0; w < window_count; ++w) {
    auto in = open_input(in_dir(dir, names[static_cast<std::size_t>(w)]));
    layers.push_back(read_layer_csv(in, w));
  }
  return layers;
}

bool layers_present(const std::string& dir, int window_count) {
  for (int w = 0; w < window_count; ++w) {
    if (!fs::exists(in_dir(dir, artifact::layer_file(w)))) return false;
  }
  return true;
}

template <class Body>
void parallel_for(std::size_t count, int threads, Body body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_lock;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_lock);
        if (!error) error = std::current_exception();
      }
    }
  };
  const auto extra = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < extra; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---- analysis helpers ------------------------------------------------------

template <class T>
nlohmann::json by_id(const std::map<int, T>& values) {
  auto j = nlohmann::json::object();
  for (const auto& [id, v] : values) j[std::to_string(id)] = v;
  return j;
}

nlohmann::json kw_json(const std::optional<KruskalWallis>& test) {
  if (!test) return nullptr;
  return {{"h", test->h}, {"p", test->p}, {"n", test->n}, {"dof", test->dof}};
}

nlohmann::json measure_json(const AlignedMeasure& m) {
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& t : m.test) tests.push_back(kw_json(t));
  return {{"origin_mean", m.origin_mean},
          {"destination_mean", m.destination_mean},
          {"origin_count", m.origin_count},
          {"destination_count", m.destination_count},
          {"test", tests}};
}

std::map<std::string, int> read_static_partition(const std::string& path) {
  auto in = open_input(path);
  csv::Reader reader(in);
  const auto user = reader.column("user_id");
  const auto community = reader.column("community_id");
  std::map<std::string, int> out;
  std::vector<std::string> f;
  while (reader.next(f)) {
    try {
      out[f.at(user)] = std::stoi(f.at(community));
    } catch (const std::logic_error&) {
      throw InputError(fmt::format("{} line {}: bad community_id", path, reader.line_number()));
    }
  }
  return out;
}

}  // namespace

// ---- stages ---------------------------------------------------------------

StageReport run_ingest(const PipelineConfig& config) {
  return staged(config, "ingest", [&](StageReport& r) {
    validate(config);
    if (config.input.empty()) throw InputError("no input file configured");
    fs::create_directories(config.output_dir);
    ParseOptions options;
    options.max_bad_fraction = config.max_bad_fraction;
    options.span = config.span;
    auto parsed = parse_events_file(config.input, config.format, options);
    const TimeSpan span = config.span ? *config.span : event_span(parsed.events);
    const auto windows = make_windows(span.start, span.end, config.window_days, config.offset_days);
    const auto superspreaders = select_superspreaders(parsed.events, config.top_fraction);
    const auto corpus = window_events(parsed.events, windows, superspreaders);

    {
      auto out = open_output(in_dir(config.output_dir, artifact::events));
      write_events_csv(out, corpus.events);
    }
    write_windows_csv(in_dir(config.output_dir, artifact::windows), corpus);
    r.outputs = {artifact::events, artifact::windows};

    std::set<std::string> users;
    for (const auto& ev : parsed.events) users.insert(ev.user_id);
    r.summary = {{"rows", parsed.rows},
                 {"bad_records", parsed.bad_records},
                 {"bad_samples", parsed.bad_samples},
                 {"out_of_span", parsed.out_of_span},
                 {"events", parsed.events.size()},
                 {"users", users.size()},
                 {"superspreaders", superspreaders.size()},
                 {"superspreader_events", corpus.events.size()},
                 {"span", {{"start", format_timestamp(span.start)}, {"end", format_timestamp(span.end)}}},
                 {"windows", windows.size()}};
  });
}

StageReport run_layers(const PipelineConfig& config) {
  return staged(config, "layers", [&](StageReport& r) {
    validate(config);
    require_artifacts(config.output_dir, {artifact::events, artifact::windows}, "ingest");
    const auto corpus = load_corpus(config.output_dir);
    const auto n = corpus.window_count();
    std::vector<LayerGraph> layers(n);
    std::vector<std::size_t> raw_edges(n);
    parallel_for(n, config.threads, [&](std::size_t w) {
      const auto vectors = build_user_vectors(corpus.events, corpus.window_events[w]);
      const auto layer = build_similarity_layer(vectors, static_cast<int>(w));
      raw_edges[w] = layer.edge_count();
      layers[w] = disparity_backbone(layer, config.alpha);
    });

    fs::create_directories(in_dir(config.output_dir, artifact::layers_dir));
    nlohmann::json per_window = nlohmann::json::array();
    for (std::size_t w = 0; w < n; ++w) {
      const auto name = artifact::layer_file(static_cast<int>(w));
      auto out = open_output(in_dir(config.output_dir, name));
      write_layer_csv(out, layers[w]);
      r.outputs.push_back(name);
      per_window.push_back(
          {{"window", w}, {"nodes", layers[w].node_count()}, {"edges", layers[w].edge_count()}, {"raw_edges", raw_edges[w]}});
    }
    r.summary = {{"windows", n}, {"layers", per_window}};
  });
}

StageReport run_detect(const PipelineConfig& config) {
  return staged(config, "detect", [&](StageReport& r) {
    validate(config);
    require_artifacts(config.output_dir, {artifact::windows}, "ingest");
    const auto windows = read_windows_csv(in_dir(config.output_dir, artifact::windows));
    auto layers = load_layers(config.output_dir, static_cast<int>(windows.size()));
    const auto static_layer = aggregate_static_network(layers);

    ResolutionConfig resolution;
    resolution.gamma = config.gamma;
    resolution.omega = config.omega;
    resolution.seed = config.seed;
    const auto network = assemble_multiplex(std::move(layers), config.omega);
    const auto partition = leiden_partition(network, resolution);
    {
      auto out = open_output(in_dir(config.output_dir, artifact::partition));
      write_partition_csv(out, partition);
    }

    const auto static_network = assemble_multiplex({static_layer}, 0.0);
    const auto static_partition = leiden_partition(static_network, resolution);
    {
      auto out = open_output(in_dir(config.output_dir, artifact::static_partition));
      csv::Writer w(out);
      w.row({"user_id", "community_id"});
      for (const auto& m : static_partition.rows) w.row({m.user_id, std::to_string(m.community)});
    }

    r.summary = {{"slices", network.slice_count()},
                 {"couplings", network.couplings.size()},
                 {"communities", partition.community_count},
                 {"quality", partition.quality},
                 {"pass_quality", partition.pass_quality},
                 {"static_users", static_layer.node_count()},
                 {"static_communities", static_partition.community_count},
                 {"static_quality", static_partition.quality}};
    {
      auto out = open_output(in_dir(config.output_dir, artifact::detection));
      out << r.summary.dump(2) << '\n';
    }
    r.outputs = {artifact::partition, artifact::static_partition, artifact::detection};
  });
}

StageReport run_analyze(const PipelineConfig& config) {
  return staged(config, "analyze", [&](StageReport& r) {
    validate(config);
    const auto& dir = config.output_dir;
    require_artifacts(dir, {artifact::partition}, "detect");
    require_artifacts(dir, {artifact::events, artifact::windows}, "ingest");
    const auto corpus = load_corpus(dir);
    const int n = static_cast<int>(corpus.window_count());
    DynamicPartition partition;
    {
      auto in = open_input(in_dir(dir, artifact::partition));
      partition = read_partition_csv(in);
    }
    for (const auto& m : partition.rows) {
      if (m.window_index >= n) {
        throw InputError(fmt::format("partition refers to window {} but only {} windows exist", m.window_index, n));
      }
    }

    nlohmann::json metrics;
    std::vector<std::string> skipped;
    const auto timelines = community_timelines(partition, n);
    const auto paths = user_trajectories(partition);
    metrics["windows"] = n;
    metrics["users"] = paths.size();
    metrics["communities"] = timelines.communities.size();

    nlohmann::json stability = nlohmann::json::array();
    for (const auto& s : stability_metrics(timelines)) {
      stability.push_back({{"community", s.community},
                           {"anchor_window", s.anchor_window},
                           {"size", s.size},
                           {"relative_size", s.relative_size},
                           {"jaccard", s.jaccard},
                           {"influx", s.influx},
                           {"outflux", s.outflux}});
    }
    metrics["stability"] = stability;

    const auto community_tf = community_hashtag_tf(timelines, corpus);
    std::map<int, HashtagCounts> profiles;
    for (const auto& [id, tl] : timelines.communities) {
      auto it = community_tf.find(id);
      profiles[id] = it == community_tf.end() ? HashtagCounts{} : it->second;
    }
    const auto similarity = community_similarity(profiles);
    auto shifts = extract_shifts(paths);
    weight_shifts(shifts, similarity);
    metrics["similarity"] = {{"communities_without_hashtags", similarity.without_hashtags}};

    nlohmann::json flows = nlohmann::json::array();
    for (const auto& e : net_flow_network(shifts, &similarity)) {
      flows.push_back({{"from", e.from},
                       {"to", e.to},
                       {"net_flow", e.net_flow},
                       {"dissimilarity", e.dissimilarity},
                       {"weighted_flow", e.weighted_flow}});
    }
    metrics["shifts"] = {{"count", shifts.size()}};
    metrics["flows"] = flows;

    const auto membership = membership_shift_stats(paths, shifts);
    {
      nlohmann::json joint = nlohmann::json::array();
      for (const auto& [key, users] : membership.joint) {
        joint.push_back({{"memberships", key.first}, {"shifts", key.second}, {"users", users}});
      }
      auto histogram = [](const std::map<std::size_t, std::size_t>& h) {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [k, v] : h) j[std::to_string(k)] = v;
        return j;
      };
      metrics["membership_shifts"] = {
          {"users", membership.users},
          {"single_membership_fraction", membership.single_membership_fraction},
          {"pearson", membership.pearson ? nlohmann::json(*membership.pearson) : nlohmann::json(nullptr)},
          {"membership_histogram", histogram(membership.membership_histogram)},
          {"shift_histogram", histogram(membership.shift_histogram)},
          {"joint", joint}};
    }

    std::optional<PolarityMap> polarity;
    if (config.polarity_seeds.empty()) {
      skipped.push_back("polarity: no seeds configured");
      metrics["polarity"] = nullptr;
    } else {
      PolarityMap pm = hashtag_polarity(corpus.events, config.polarity_seeds);
      assign_community_polarity(pm, community_tf);
      std::vector<ShiftRecord> scored;
      for (const auto& s : shifts) {
        if (pm.community.count(s.origin) && pm.community.count(s.destination)) scored.push_back(s);
      }
      const auto delta = polarity_shift_stats(scored, pm.community);
      metrics["polarity"] = {{"iterations", pm.iterations},
                             {"converged", pm.converged},
                             {"hashtags", pm.hashtag.size()},
                             {"unreached", pm.unreached.size()},
                             {"community", by_id(pm.community)},
                             {"community_raw", by_id(pm.community_raw)},
                             {"shift_delta",
                              {{"shifts", scored.size()},
                               {"shifts_without_polarity", shifts.size() - scored.size()},
                               {"mean", delta.mean},
                               {"total", delta.total}}}};
      polarity = std::move(pm);
    }

    ArchetypeOptions archetype_options;
    archetype_options.min_active_windows = static_cast<std::size_t>(config.min_active_windows);
    const auto labels = classify_archetypes(paths, n, archetype_options);
    {
      const auto counts = archetype_counts(labels);
      nlohmann::json j = nlohmann::json::object();
      for (auto a : {Archetype::stationary, Archetype::influenced, Archetype::volatile_, Archetype::other}) {
        auto it = counts.find(a);
        j[std::string(archetype_name(a))] = it == counts.end() ? 0 : it->second;
      }
      metrics["archetypes"] = {{"counts", j}, {"third", third_of(n)}};
    }

    {
      const auto distances = shift_distance_distributions(shifts, labels);
      nlohmann::json groups = nlohmann::json::object();
      for (const auto& [a, xs] : distances.samples) {
        double sum = 0.0;
        for (double x : xs) sum += x;
        groups[std::string(archetype_name(a))] = {
            {"shifts", xs.size()}, {"mean", xs.empty() ? nlohmann::json(nullptr) : nlohmann::json(sum / xs.size())}};
      }
      nlohmann::json tests = nlohmann::json::array();
      for (const auto& t : distances.tests) {
        tests.push_back({{"a", archetype_name(t.a)}, {"b", archetype_name(t.b)}, {"kruskal_wallis", kw_json(t.test)}});
      }
      metrics["shift_distances"] = {{"groups", groups}, {"tests", tests}};
    }

    {
      const auto user_tf = user_hashtag_tf(corpus);
      const auto affinity = stationary_affinity(labels, paths, user_tf, community_tf, config.rbo_persistence);
      nlohmann::json matrix = nlohmann::json::object();
      for (const auto& [own, row] : affinity.matrix) matrix[std::to_string(own)] = by_id(row);
      metrics["stationary_affinity"] = {{"users", affinity.rows.size()},
                                        {"without_hashtags", affinity.without_hashtags},
                                        {"diagonal_fraction", affinity.diagonal_fraction},
                                        {"matrix", matrix}};
    }

    const auto community_window_tf = community_window_hashtag_tf(timelines, corpus);
    if (layers_present(dir, n)) {
      const auto network = assemble_multiplex(load_layers(dir, n), config.omega);
      const auto user_window_tf = user_window_hashtag_tf(corpus);
      AlignmentInputs inputs{&network, &timelines, &paths, &user_window_tf, &community_window_tf};
      const auto aligned =
          aligned_shift_trends(labels, shifts, inputs, config.alignment_half_width, config.rbo_persistence);
      metrics["aligned_trends"] = {{"offsets", aligned.offsets},
                                   {"users", aligned.users},
                                   {"rbo", measure_json(aligned.rbo)},
                                   {"closeness", measure_json(aligned.closeness)}};
    } else {
      skipped.push_back("aligned_trends: layer files missing");
      metrics["aligned_trends"] = nullptr;
    }

    std::optional<std::pair<OverlapMatrix, OverlapMatrix>> overlap;
    if (fs::exists(in_dir(dir, artifact::static_partition))) {
      const auto static_partition = read_static_partition(in_dir(dir, artifact::static_partition));
      overlap.emplace(partition_overlap(static_partition, timelines),
                      partition_overlap_dominant(static_partition, timelines));
      std::size_t above = 0;
      for (const auto& row : overlap->first.values) {
        if (!row.empty() && *std::max_element(row.begin(), row.end()) > 0.6) ++above;
      }
      metrics["overlap"] = {{"static_communities", overlap->first.static_ids.size()},
                            {"static_with_overlap_above_0.6", above}};
    } else {
      skipped.push_back("overlap: static partition missing");
      metrics["overlap"] = nullptr;
    }
    metrics["skipped"] = skipped;

    // plot-ready tables
    {
      auto out = open_output(in_dir(dir, artifact::shifts));
      write_shifts_csv(out, shifts);
    }
    {
      auto out = open_output(in_dir(dir, artifact::similarity));
      csv::Writer w(out);
      w.row({"community_a", "community_b", "similarity"});
      for (std::size_t a = 0; a < similarity.communities.size(); ++a) {
        for (std::size_t b = 0; b < similarity.communities.size(); ++b) {
          w.row({std::to_string(similarity.communities[a]), std::to_string(similarity.communities[b]),
                 csv::number(similarity.values[a][b])});
        }
      }
    }
    {
      auto out = open_output(in_dir(dir, artifact::polarity));
      csv::Writer w(out);
      w.row({"kind", "id", "polarity", "seed"});
      if (polarity) {
        for (const auto& [tag, p] : polarity->hashtag) {
          auto seed = polarity->seeds.find(tag);
          w.row({"hashtag", tag, csv::number(p), seed == polarity->seeds.end() ? "" : std::to_string(seed->second)});
        }
        for (const auto& [id, p] : polarity->community) w.row({"community", std::to_string(id), csv::number(p), ""});
      }
    }
    {
      auto out = open_output(in_dir(dir, artifact::archetypes));
      write_archetypes_csv(out, labels);
    }
    {
      auto out = open_output(in_dir(dir, artifact::trends));
      csv::Writer w(out);
      w.row({"community", "window_index", "rank", "hashtag", "count"});
      for (const auto& t : top_hashtag_trends(community_window_tf)) {
        w.row({std::to_string(t.community), std::to_string(t.window), std::to_string(t.rank), t.hashtag,
               csv::number(t.count)});
      }
    }
    {
      auto out = open_output(in_dir(dir, artifact::overlap));
      csv::Writer w(out);
      w.row({"static_community", "dynamic_community", "overlap", "overlap_dominant"});
      if (overlap) {
        const auto& [u, d] = *overlap;
        for (std::size_t i = 0; i < u.static_ids.size(); ++i) {
          for (std::size_t j = 0; j < u.dynamic_ids.size(); ++j) {
            w.row({std::to_string(u.static_ids[i]), std::to_string(u.dynamic_ids[j]), csv::number(u.values[i][j]),
                   csv::number(d.values[i][j])});
          }
        }
      }
    }
    {
      auto out = open_output(in_dir(dir, artifact::metrics));
      out << metrics.dump(2) << '\n';
    }
    r.outputs = {artifact::metrics,  artifact::shifts, artifact::similarity, artifact::polarity,
                 artifact::archetypes, artifact::trends, artifact::overlap};
    r.summary = {{"windows", n},
                 {"communities", timelines.communities.size()},
                 {"shifts", shifts.size()},
                 {"skipped", skipped}};
  });
}

nlohmann::json run_pipeline(const PipelineConfig& config) {
  validate(config);
  fs::create_directories(config.output_dir);
  fs::remove(in_dir(config.output_dir, artifact::manifest));
  const auto start = Clock::now();
  run_ingest(config);
  run_layers(config);
  run_detect(config);
  run_analyze(config);
  auto manifest = load_manifest(config.output_dir);
  manifest["total_seconds"] = seconds_since(start);
  auto out = open_output(in_dir(config.output_dir, artifact::manifest));
  out << manifest.dump(2) << '\n';
  return manifest;
}

StageReport run_synth(const ScenarioSpec& spec, const std::string& directory) {
  const auto start = Clock::now();
  StageReport r{"synth", 0.0, {}, nlohmann::json::object()};
  fs::create_directories(directory);
  const auto scenario = build_scenario(spec);
  const auto output = generate(scenario);
  {
    auto out = open_output(in_dir(directory, "events.csv"));
    write_events_csv(out, output.events);
  }
  write_ground_truth(output.truth, in_dir(directory, "truth"));
  {
    auto out = open_output(in_dir(directory, "scenario.json"));
    out << nlohmann::json(spec).dump(2) << '\n';
  }

  PipelineConfig config;
  config.input = in_dir(directory, "events.csv");
  config.format = EventFormat::csv;
  config.span = TimeSpan{spec.start, spec.start + static_cast<Seconds>(spec.total_days()) * kSecondsPerDay};
  config.window_days = spec.window_days;
  config.offset_days = spec.offset_days;
  config.top_fraction = 1.0;
  config.seed = spec.seed;
  config.polarity_seeds = output.truth.seeds;
  config.output_dir = in_dir(directory, "run");
  save_config(config, in_dir(directory, "config.json"));

  r.outputs = {"events.csv", "truth/membership.csv", "truth/shifts.csv", "truth/archetypes.csv", "truth/truth.json",
               "scenario.json", "config.json"};
  r.summary = {{"users", scenario.users.size()},
               {"events", output.events.size()},
               {"cross_pool_events", output.truth.cross_pool_events},
               {"planted_shifts", output.truth.shifts.size()},
               {"windows", spec.windows}};
  r.seconds = seconds_since(start);
  return r;
}

StageReport run_score(const std::string& truth_directory, const std::string& run_directory) {
  const auto start = Clock::now();
  StageReport r{"score", 0.0, {}, nlohmann::json::object()};
  const auto truth = read_ground_truth(truth_directory);
  require_artifacts(run_directory, {artifact::partition}, "detect");
  require_artifacts(run_directory, {artifact::shifts, artifact::archetypes}, "analyze");
  DynamicPartition partition;
  std::vector<ShiftRecord> shifts;
  std::vector<ArchetypeLabel> labels;
  {
    auto in = open_input(in_dir(run_directory, artifact::partition));
    partition = read_partition_csv(in);
  }
  {
    auto in = open_input(in_dir(run_directory, artifact::shifts));
    shifts = read_shifts_csv(in);
  }
  {
    auto in = open_input(in_dir(run_directory, artifact::archetypes));
    labels = read_archetypes_csv(in);
  }
  const auto score = score_recovery(truth, partition, shifts, labels);
  nlohmann::json confusion = nlohmann::json::object();
  for (const auto& [planted, row] : score.confusion) {
    auto& j = confusion[std::string(archetype_name(planted))];
    for (const auto& [recovered, users] : row) j[std::string(archetype_name(recovered))] = users;
  }
  r.summary = {{"window_nmi", score.window_nmi},
               {"mean_nmi", score.mean_nmi},
               {"planted_shifts", score.planted_shifts},
               {"recovered_shifts", score.recovered_shifts},
               {"matched_shifts", score.matched_shifts},
               {"precision", score.precision},
               {"recall", score.recall},
               {"f1", score.f1},
               {"archetype_confusion", confusion}};
  {
    auto out = open_output(in_dir(run_directory, artifact::score));
    out << r.summary.dump(2) << '\n';
  }
  r.outputs = {artifact::score};
  r.seconds = seconds_since(start);
  return r;
}

}  // namespace coordyn
