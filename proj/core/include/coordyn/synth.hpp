#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coordyn/analytics/archetypes.hpp"
#include "coordyn/analytics/shifts.hpp"
#include "coordyn/dyncomm.hpp"
#include "coordyn/ingest.hpp"

namespace coordyn {

struct PlantedCommunity {
  int id = 0;
  std::size_t size = 0;  // users whose home this is
  double leaning = 0.0;  // in [-1, 1]; drives seed hashtag use
  int bloc = 0;          // communities of one bloc share part of their pools
};

/// From the arrival window on, a community's tweets carry a new theme tag.
struct ThemeSwitch {
  int community = 0;
  int window = 0;
};

/// Generator parameters. Each user follows a day plan of communities; on an
/// active day they retweet Poisson(retweets_per_day) tweets, drawn from the
/// planned community's pool with probability 1 - noise and otherwise from a
/// uniformly chosen other pool. Popularity within a pool is Zipf.
struct ScenarioSpec {
  std::uint64_t seed = 7;
  Seconds start = 1573516800;  // 2019-11-12
  int windows = 25;
  int window_days = 7;
  int offset_days = 1;
  std::vector<PlantedCommunity> communities{
      {0, 500, -1.0, 0}, {1, 500, -0.5, 0}, {2, 500, 0.5, 1}, {3, 500, 1.0, 1}};
  double noise = 0.05;
  double retweets_per_day = 2.0;
  std::size_t pool_size = 400;
  double zipf_exponent = 0.8;
  /// Fraction of each pool drawn from a segment shared by its bloc.
  double pool_overlap = 0.0;
  std::size_t vocabulary = 6;
  double influenced_fraction = 0.05;
  double volatile_fraction = 0.02;
  double other_fraction = 0.02;
  /// Probability that a shift targets a community of lower (negative drift)
  /// or higher (positive drift) leaning than its origin.
  double drift = 0.0;
  std::optional<ThemeSwitch> theme_switch;
  /// A user changing community stays silent for window_days days around the
  /// change: no window mixes two planted communities and the window at the
  /// change is empty for that user.
  bool transition_pause = true;

  int total_days() const { return (windows - 1) * offset_days + window_days; }
  /// Window whose centre is closest to the day, clamped to the range.
  int window_of_day(int day) const;
};

struct PlantedUser {
  std::string id;
  std::vector<int> days;      // community per day, -1 when silent
  std::vector<int> schedule;  // community per window, -1 when absent
  /// Derived from the windows in which the user is active.
  Archetype archetype = Archetype::stationary;
};

struct PlantedScenario {
  ScenarioSpec spec;
  std::vector<PlantedUser> users;
  std::map<std::string, int> seeds;  // hashtag leaning seeds
};

/// Throws InputError on inconsistent parameters.
void validate(const ScenarioSpec& spec);

/// Per window, the community with most active days (ties to the later
/// one), or -1 when the user is silent throughout.
std::vector<int> window_schedule(const ScenarioSpec& spec, const std::vector<int>& day_plan);
UserPath schedule_path(const std::vector<int>& schedule);
PlantedScenario build_scenario(const ScenarioSpec& spec);

struct GroundTruth {
  std::vector<Membership> memberships;  // every active (user, window)
  std::vector<ShiftRecord> shifts;      // changes between active windows, weight 0
  std::map<std::string, Archetype> archetypes;
  std::map<std::string, int> seeds;
  std::size_t events = 0;
  std::size_t cross_pool_events = 0;
};

struct SynthOutput {
  std::vector<RetweetEvent> events;  // timestamp order
  GroundTruth truth;
};

/// Deterministic per scenario seed.
SynthOutput generate(const PlantedScenario& scenario);

void to_json(nlohmann::json& j, const ScenarioSpec& spec);
void from_json(const nlohmann::json& j, ScenarioSpec& spec);

/// Ground-truth tables: membership.csv, shifts.csv, archetypes.csv and
/// truth.json (seeds and event counts) in `directory`.
void write_ground_truth(const GroundTruth& truth, const std::string& directory);
GroundTruth read_ground_truth(const std::string& directory);

}  // namespace coordyn
