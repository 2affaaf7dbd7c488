#include "coordyn/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include <fmt/format.h>

#include "coordyn/error.hpp"
#include "coordyn/export.hpp"
#include "random.hpp"

namespace coordyn {

using detail::Rng;

int ScenarioSpec::window_of_day(int day) const {
  const double centre_offset = (window_days - 1) / 2.0;
  const int w = static_cast<int>(std::floor((day - centre_offset) / offset_days + 0.5));
  return std::clamp(w, 0, windows - 1);
}

void validate(const ScenarioSpec& s) {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) throw InputError(fmt::format("invalid scenario: {}", what));
  };
  require(s.windows >= 1, "windows must be at least 1");
  require(s.window_days >= 1 && s.offset_days >= 1, "window_days and offset_days must be at least 1");
  require(!s.communities.empty(), "no communities");
  std::set<int> ids;
  for (const auto& c : s.communities) {
    require(c.id >= 0 && ids.insert(c.id).second, "community ids must be unique and non-negative");
    require(c.size > 0, "community size must be positive");
    require(c.leaning >= -1.0 && c.leaning <= 1.0, "leaning must lie in [-1, 1]");
  }
  require(s.noise >= 0.0 && s.noise < 1.0, "noise must lie in [0, 1)");
  require(s.retweets_per_day > 0.0 && s.retweets_per_day <= 50.0, "retweets_per_day must lie in (0, 50]");
  require(s.pool_size >= 1, "pool_size must be positive");
  require(s.zipf_exponent >= 0.0, "zipf_exponent must be non-negative");
  require(s.pool_overlap >= 0.0 && s.pool_overlap < 1.0, "pool_overlap must lie in [0, 1)");
  require(s.vocabulary >= 1, "vocabulary must be positive");
  require(s.influenced_fraction >= 0.0 && s.volatile_fraction >= 0.0 && s.other_fraction >= 0.0 &&
              s.influenced_fraction + s.volatile_fraction + s.other_fraction <= 1.0,
          "archetype fractions must be non-negative and sum to at most 1");
  require(s.drift >= -1.0 && s.drift <= 1.0, "drift must lie in [-1, 1]");
  if (s.theme_switch) {
    require(ids.count(s.theme_switch->community) == 1, "theme switch names an unknown community");
    require(s.theme_switch->window >= 0 && s.theme_switch->window < s.windows, "theme switch window out of range");
  }
}

namespace {

// Plans each user's community per day (-1 = silent).
class PlanBuilder {
 public:
  PlanBuilder(const ScenarioSpec& spec, Rng& rng)
      : spec_(spec), rng_(rng), days_(spec.total_days()), pause_(spec.transition_pause ? spec.window_days : 0) {
    first_day_of_.assign(spec.windows, days_);
    for (int day = days_ - 1; day >= 0; --day) first_day_of_[spec.window_of_day(day)] = day;
  }

  std::vector<int> stationary(int home) const { return std::vector<int>(days_, home); }

  // One change of community around the centre of a window drawn from
  // [lo, hi]; stationary when the range is empty.
  std::vector<int> single_shift(int home, int lo, int hi) {
    auto plan = stationary(home);
    if (lo > hi || spec_.communities.size() < 2) return plan;
    const int at = lo + static_cast<int>(rng_.below(static_cast<std::size_t>(hi - lo + 1)));
    const int change = first_day_of_[at];
    std::fill(plan.begin() + change, plan.end(), destination(home));
    const int from = std::max(0, change - (spec_.window_days - 1) / 2);
    std::fill(plan.begin() + from, plan.begin() + std::min(days_, from + pause_), -1);
    return plan;
  }

  // Short bursts in a random cycle of communities, each burst visible in
  // fewer than a third of the windows.
  std::vector<int> rotating(int home) {
    const auto third = static_cast<int>(third_of(spec_.windows));
    const int burst = std::max(1, (third - 1) * spec_.offset_days - (spec_.window_days - 1));
    const int bursts = std::max(1, (days_ + pause_) / (burst + pause_));
    const int slack = days_ - (bursts * burst + (bursts - 1) * pause_);
    std::vector<int> cycle;
    for (const auto& c : spec_.communities) {
      if (c.id != home) cycle.push_back(c.id);
    }
    rng_.shuffle(cycle);
    cycle.insert(cycle.begin(), home);

    std::vector<int> plan(days_, -1);
    int day = static_cast<int>(rng_.below(static_cast<std::size_t>(slack + 1)));
    for (int b = 0; b < bursts; ++b) {
      const int community = cycle[static_cast<std::size_t>(b) % cycle.size()];
      for (int i = 0; i < burst && day < days_; ++i) plan[day++] = community;
      day += pause_;
    }
    return plan;
  }

 private:
  int destination(int origin) {
    double origin_leaning = 0.0;
    std::vector<int> others;
    for (const auto& c : spec_.communities) {
      if (c.id == origin) {
        origin_leaning = c.leaning;
      } else {
        others.push_back(c.id);
      }
    }
    if (spec_.drift != 0.0 && rng_.chance(std::abs(spec_.drift))) {
      std::vector<int> directed;
      for (const auto& c : spec_.communities) {
        if (c.id == origin) continue;
        if (spec_.drift < 0.0 ? c.leaning < origin_leaning : c.leaning > origin_leaning) directed.push_back(c.id);
      }
      if (!directed.empty()) return directed[rng_.below(directed.size())];
    }
    return others[rng_.below(others.size())];
  }

  const ScenarioSpec& spec_;
  Rng& rng_;
  int days_;
  int pause_;
  std::vector<int> first_day_of_;
};

}  // namespace

std::vector<int> window_schedule(const ScenarioSpec& spec, const std::vector<int>& day_plan) {
  std::vector<std::map<int, int>> counts(spec.windows);
  for (int day = 0; day < static_cast<int>(day_plan.size()); ++day) {
    if (day_plan[day] < 0) continue;
    for (int w = 0; w < spec.windows; ++w) {
      const int start = w * spec.offset_days;
      if (start <= day && day < start + spec.window_days) ++counts[w][day_plan[day]];
    }
  }
  std::vector<int> schedule(spec.windows, -1);
  for (int w = 0; w < spec.windows; ++w) {
    int best = 0;
    for (const auto& [c, n] : counts[w]) {
      if (n >= best) {  // ties go to the later arrival
        best = n;
        schedule[w] = c;
      }
    }
  }
  return schedule;
}

UserPath schedule_path(const std::vector<int>& schedule) {
  UserPath path;
  for (int w = 0; w < static_cast<int>(schedule.size()); ++w) {
    if (schedule[w] >= 0) path.emplace_back(w, schedule[w]);
  }
  return path;
}

PlantedScenario build_scenario(const ScenarioSpec& spec) {
  validate(spec);
  PlantedScenario out;
  out.spec = spec;
  out.seeds = {{"left", -1}, {"news", 0}, {"right", 1}};

  Rng rng(spec.seed);
  PlanBuilder builder(spec, rng);
  const int n = spec.windows;
  const int third = static_cast<int>(third_of(n));
  std::size_t next_id = 0;
  for (const auto& c : spec.communities) {
    for (std::size_t i = 0; i < c.size; ++i) {
      PlantedUser user;
      user.id = fmt::format("u{:05}", next_id++);
      const double roll = rng.uniform();
      if (roll < spec.influenced_fraction) {
        user.days = builder.single_shift(c.id, 2, n - third - 2);
      } else if (roll < spec.influenced_fraction + spec.volatile_fraction) {
        user.days = builder.rotating(c.id);
      } else if (roll < spec.influenced_fraction + spec.volatile_fraction + spec.other_fraction) {
        user.days = builder.single_shift(c.id, n - third + 2, n - 2);
      } else {
        user.days = builder.stationary(c.id);
      }
      user.schedule = window_schedule(spec, user.days);
      user.archetype = label_from_evidence(archetype_evidence(schedule_path(user.schedule)), n);
      out.users.push_back(std::move(user));
    }
  }
  return out;
}

namespace {

struct Tweet {
  std::string id;
  std::vector<std::string> hashtags;
};

class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent) : cdf_(n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) cdf_[i] = acc += 1.0 / std::pow(static_cast<double>(i + 1), exponent);
    for (auto& x : cdf_) x /= acc;
  }

  std::size_t draw(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

std::string side_tag(double leaning) { return leaning < 0.0 ? "left" : "right"; }

// Tags of one tweet: a topic from the owner's vocabulary, the owner's theme
// when one is set, the side seed with probability |leaning| / 2 and the
// neutral seed with probability 0.1.
std::vector<std::string> tweet_tags(const std::string& prefix, double leaning, const std::string& theme,
                                    const ZipfSampler& topics, Rng& rng) {
  std::vector<std::string> tags{fmt::format("{}topic{}", prefix, topics.draw(rng))};
  if (!theme.empty()) tags.push_back(theme);
  if (leaning != 0.0 && rng.chance(std::abs(leaning) / 2.0)) tags.push_back(side_tag(leaning));
  if (rng.chance(0.1)) tags.push_back("news");
  return tags;
}

struct Pools {
  // own[k][era]: era 1 exists only for the theme-switch community
  std::map<int, std::vector<std::vector<Tweet>>> own;
  std::map<int, std::vector<Tweet>> shared;  // by bloc
};

Pools build_pools(const ScenarioSpec& spec, Rng& rng) {
  Pools pools;
  const ZipfSampler topics(spec.vocabulary, 1.0);
  for (const auto& c : spec.communities) {
    const bool switches = spec.theme_switch && spec.theme_switch->community == c.id;
    const int eras = switches ? 2 : 1;
    auto& eras_of = pools.own[c.id];
    for (int era = 0; era < eras; ++era) {
      const std::string theme = switches ? fmt::format("k{}theme{}", c.id, era == 0 ? "a" : "b") : "";
      std::vector<Tweet> pool;
      for (std::size_t j = 0; j < spec.pool_size; ++j) {
        pool.push_back({fmt::format("p{}{}-{}", c.id, era == 0 ? "" : "x", j),
                        tweet_tags(fmt::format("k{}", c.id), c.leaning, theme, topics, rng)});
      }
      eras_of.push_back(std::move(pool));
    }
  }
  if (spec.pool_overlap > 0.0) {
    std::map<int, std::pair<double, int>> bloc_leaning;
    for (const auto& c : spec.communities) {
      bloc_leaning[c.bloc].first += c.leaning;
      ++bloc_leaning[c.bloc].second;
    }
    for (const auto& [bloc, acc] : bloc_leaning) {
      const double leaning = acc.first / acc.second;
      std::vector<Tweet> pool;
      for (std::size_t j = 0; j < spec.pool_size; ++j) {
        pool.push_back({fmt::format("b{}-{}", bloc, j), tweet_tags(fmt::format("bloc{}", bloc), leaning, "", topics, rng)});
      }
      pools.shared.emplace(bloc, std::move(pool));
    }
  }
  return pools;
}

}  // namespace

SynthOutput generate(const PlantedScenario& scenario) {
  const auto& spec = scenario.spec;
  validate(spec);
  for (const auto& u : scenario.users) {
    if (static_cast<int>(u.days.size()) != spec.total_days() || static_cast<int>(u.schedule.size()) != spec.windows) {
      throw InputError(fmt::format("user '{}' plan does not cover the scenario period", u.id));
    }
  }
  Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  const Pools pools = build_pools(spec, rng);
  const ZipfSampler popularity(spec.pool_size, spec.zipf_exponent);
  std::map<int, int> bloc_of;
  std::vector<int> ids;
  for (const auto& c : spec.communities) {
    bloc_of[c.id] = c.bloc;
    ids.push_back(c.id);
  }

  const int days = spec.total_days();

  SynthOutput out;
  std::size_t counter = 0;
  for (int day = 0; day < days; ++day) {
    const int w = spec.window_of_day(day);
    const Seconds day_start = spec.start + static_cast<Seconds>(day) * kSecondsPerDay;
    for (const auto& user : scenario.users) {
      const int home = user.days[day];
      if (home < 0) continue;
      const unsigned count = rng.poisson(spec.retweets_per_day);
      for (unsigned r = 0; r < count; ++r) {
        int source = home;
        if (ids.size() > 1 && rng.chance(spec.noise)) {
          std::size_t pick = rng.below(ids.size() - 1);
          if (ids[pick] == home) pick = ids.size() - 1;
          source = ids[pick];
          ++out.truth.cross_pool_events;
        }
        const Tweet* tweet;
        if (spec.pool_overlap > 0.0 && rng.chance(spec.pool_overlap)) {
          tweet = &pools.shared.at(bloc_of.at(source))[popularity.draw(rng)];
        } else {
          const auto& eras = pools.own.at(source);
          const bool later = eras.size() > 1 && w >= spec.theme_switch->window;
          tweet = &eras[later ? 1 : 0][popularity.draw(rng)];
        }
        RetweetEvent e;
        e.user_id = user.id;
        e.tweet_id = fmt::format("r{:09}", counter++);
        e.original_tweet_id = tweet->id;
        e.timestamp = day_start + static_cast<Seconds>(rng.below(kSecondsPerDay));
        e.hashtags = tweet->hashtags;
        out.events.push_back(std::move(e));
      }
    }
  }
  std::stable_sort(out.events.begin(), out.events.end(),
                   [](const RetweetEvent& a, const RetweetEvent& b) { return a.timestamp < b.timestamp; });

  auto& truth = out.truth;
  truth.events = out.events.size();
  truth.seeds = scenario.seeds;
  UserPaths paths;
  for (const auto& user : scenario.users) {
    auto& path = paths[user.id] = schedule_path(user.schedule);
    for (const auto& [w, c] : path) truth.memberships.push_back({user.id, w, c});
    truth.archetypes[user.id] = user.archetype;
  }
  truth.shifts = extract_shifts(paths);
  return out;
}

void to_json(nlohmann::json& j, const ScenarioSpec& s) {
  j = nlohmann::json{{"seed", s.seed},
                     {"start", format_timestamp(s.start)},
                     {"windows", s.windows},
                     {"window_days", s.window_days},
                     {"offset_days", s.offset_days},
                     {"noise", s.noise},
                     {"retweets_per_day", s.retweets_per_day},
                     {"pool_size", s.pool_size},
                     {"zipf_exponent", s.zipf_exponent},
                     {"pool_overlap", s.pool_overlap},
                     {"vocabulary", s.vocabulary},
                     {"influenced_fraction", s.influenced_fraction},
                     {"volatile_fraction", s.volatile_fraction},
                     {"other_fraction", s.other_fraction},
                     {"drift", s.drift},
                     {"transition_pause", s.transition_pause}};
  auto& cs = j["communities"] = nlohmann::json::array();
  for (const auto& c : s.communities) {
    cs.push_back({{"id", c.id}, {"size", c.size}, {"leaning", c.leaning}, {"bloc", c.bloc}});
  }
  if (s.theme_switch) {
    j["theme_switch"] = {{"community", s.theme_switch->community}, {"window", s.theme_switch->window}};
  }
}

void from_json(const nlohmann::json& j, ScenarioSpec& s) {
  if (!j.is_object()) throw InputError("scenario must be a JSON object");
  static const std::set<std::string> known{"seed",         "start",          "windows",
                                           "window_days",  "offset_days",    "noise",
                                           "retweets_per_day", "pool_size",  "zipf_exponent",
                                           "pool_overlap", "vocabulary",     "influenced_fraction",
                                           "volatile_fraction", "other_fraction", "drift",
                                           "communities",  "theme_switch", "transition_pause"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw InputError(fmt::format("unknown scenario key '{}'", key));
  }
  try {
    ScenarioSpec d;
    s.seed = j.value("seed", d.seed);
    if (j.contains("start")) {
      const auto& v = j.at("start");
      s.start = v.is_string() ? parse_timestamp(v.get<std::string>()) : v.get<Seconds>();
    }
    s.windows = j.value("windows", d.windows);
    s.window_days = j.value("window_days", d.window_days);
    s.offset_days = j.value("offset_days", d.offset_days);
    s.noise = j.value("noise", d.noise);
    s.retweets_per_day = j.value("retweets_per_day", d.retweets_per_day);
    s.pool_size = j.value("pool_size", d.pool_size);
    s.zipf_exponent = j.value("zipf_exponent", d.zipf_exponent);
    s.pool_overlap = j.value("pool_overlap", d.pool_overlap);
    s.vocabulary = j.value("vocabulary", d.vocabulary);
    s.influenced_fraction = j.value("influenced_fraction", d.influenced_fraction);
    s.volatile_fraction = j.value("volatile_fraction", d.volatile_fraction);
    s.other_fraction = j.value("other_fraction", d.other_fraction);
    s.drift = j.value("drift", d.drift);
    s.transition_pause = j.value("transition_pause", d.transition_pause);
    if (j.contains("communities")) {
      s.communities.clear();
      int next = 0;
      for (const auto& c : j.at("communities")) {
        PlantedCommunity pc;
        pc.id = c.value("id", next);
        pc.size = c.at("size").get<std::size_t>();
        pc.leaning = c.value("leaning", 0.0);
        pc.bloc = c.value("bloc", pc.id);
        next = pc.id + 1;
        s.communities.push_back(pc);
      }
    }
    if (j.contains("theme_switch") && !j.at("theme_switch").is_null()) {
      const auto& t = j.at("theme_switch");
      s.theme_switch = ThemeSwitch{t.at("community").get<int>(), t.at("window").get<int>()};
    } else {
      s.theme_switch.reset();
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(fmt::format("invalid scenario: {}", e.what()));
  }
  validate(s);
}

void write_ground_truth(const GroundTruth& truth, const std::string& directory) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  {
    DynamicPartition p;
    p.rows = truth.memberships;
    auto out = open_output((fs::path(directory) / "membership.csv").string());
    write_partition_csv(out, p);
  }
  {
    auto out = open_output((fs::path(directory) / "shifts.csv").string());
    write_shifts_csv(out, truth.shifts);
  }
  {
    std::vector<ArchetypeLabel> labels;
    for (const auto& [user, a] : truth.archetypes) labels.push_back({user, a, {}});
    auto out = open_output((fs::path(directory) / "archetypes.csv").string());
    write_archetypes_csv(out, labels);
  }
  {
    nlohmann::json j{{"seeds", truth.seeds}, {"events", truth.events}, {"cross_pool_events", truth.cross_pool_events}};
    auto out = open_output((fs::path(directory) / "truth.json").string());
    out << j.dump(2) << '\n';
  }
}

GroundTruth read_ground_truth(const std::string& directory) {
  namespace fs = std::filesystem;
  GroundTruth truth;
  {
    auto in = open_input((fs::path(directory) / "membership.csv").string());
    truth.memberships = read_partition_csv(in).rows;
  }
  {
    auto in = open_input((fs::path(directory) / "shifts.csv").string());
    truth.shifts = read_shifts_csv(in);
  }
  {
    auto in = open_input((fs::path(directory) / "archetypes.csv").string());
    for (auto& l : read_archetypes_csv(in)) truth.archetypes[l.user_id] = l.label;
  }
  {
    auto in = open_input((fs::path(directory) / "truth.json").string());
    try {
      const auto j = nlohmann::json::parse(in);
      truth.seeds = j.at("seeds").get<std::map<std::string, int>>();
      truth.events = j.value("events", std::size_t{0});
      truth.cross_pool_events = j.value("cross_pool_events", std::size_t{0});
    } catch (const nlohmann::json::exception& e) {
      throw InputError(fmt::format("bad truth.json: {}", e.what()));
    }
  }
  return truth;
}

}  // namespace coordyn
