#include <set>

#include <gtest/gtest.h>

#include "coordyn/analytics.hpp"
#include "coordyn/error.hpp"
#include "coordyn/synth.hpp"
#include "oracles.hpp"

namespace coordyn {
namespace {

ScenarioSpec small_spec() {
  ScenarioSpec spec;
  spec.windows = 9;
  for (auto& c : spec.communities) c.size = 60;
  spec.influenced_fraction = 0.1;
  spec.volatile_fraction = 0.1;
  spec.other_fraction = 0.1;
  return spec;
}

TEST(Synth, WindowScheduleMajorityTiesToLater) {
  ScenarioSpec spec;
  spec.windows = 3;
  spec.window_days = 2;
  spec.offset_days = 1;
  EXPECT_EQ(window_schedule(spec, {0, 0, 1, 1}), (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(window_schedule(spec, {-1, -1, -1, 2}), (std::vector<int>{-1, -1, 2}));
  EXPECT_EQ(schedule_path({0, -1, 1}), (UserPath{{0, 0}, {2, 1}}));
}

TEST(Synth, DeterministicPerSeed) {
  const auto spec = small_spec();
  const auto a = generate(build_scenario(spec));
  const auto b = generate(build_scenario(spec));
  EXPECT_EQ(a.events, b.events);
  auto other = spec;
  other.seed = spec.seed + 1;
  EXPECT_NE(generate(build_scenario(other)).events, a.events);
}

TEST(Synth, TruthFollowsActiveWindows) {
  const auto scenario = build_scenario(small_spec());
  const auto out = generate(scenario);
  std::map<std::pair<std::string, int>, int> truth;
  for (const auto& m : out.truth.memberships) truth[{m.user_id, m.window_index}] = m.community;
  std::size_t changing = 0;
  for (const auto& user : scenario.users) {
    ASSERT_EQ(user.days.size(), static_cast<std::size_t>(scenario.spec.total_days()));
    for (int w = 0; w < scenario.spec.windows; ++w) {
      const int planned = user.schedule[static_cast<std::size_t>(w)];
      auto it = truth.find({user.id, w});
      if (planned < 0) {
        EXPECT_TRUE(it == truth.end());
      } else {
        ASSERT_TRUE(it != truth.end());
        EXPECT_EQ(it->second, planned);
      }
    }
    const auto path = schedule_path(user.schedule);
    EXPECT_EQ(label_from_evidence(archetype_evidence(path), scenario.spec.windows), user.archetype) << user.id;
    EXPECT_EQ(out.truth.archetypes.at(user.id), user.archetype);
    changing += extract_shifts({{user.id, path}}).empty() ? 0 : 1;
  }
  EXPECT_GT(changing, 0u);
  EXPECT_EQ(out.truth.events, out.events.size());
}

TEST(Synth, TransitionPauseKeepsWindowsPure) {
  const auto scenario = build_scenario(small_spec());
  const auto& spec = scenario.spec;
  for (const auto& user : scenario.users) {
    for (int w = 0; w < spec.windows; ++w) {
      std::set<int> seen;
      for (int d = w * spec.offset_days; d < w * spec.offset_days + spec.window_days; ++d) {
        if (user.days[static_cast<std::size_t>(d)] >= 0) seen.insert(user.days[static_cast<std::size_t>(d)]);
      }
      EXPECT_LE(seen.size(), 1u) << user.id << " window " << w;
    }
  }
}

TEST(Synth, ArchetypeMixFollowsFractions) {
  auto spec = small_spec();
  spec.windows = 25;  // volatile bursts and pauses need the full span
  const auto scenario = build_scenario(spec);
  std::map<Archetype, std::size_t> counts;
  for (const auto& u : scenario.users) ++counts[u.archetype];
  EXPECT_EQ(scenario.users.size(), 240u);
  for (auto a : {Archetype::influenced, Archetype::volatile_, Archetype::other}) {
    EXPECT_GE(counts[a], 12u) << archetype_name(a);
    EXPECT_LE(counts[a], 36u) << archetype_name(a);
  }
}

TEST(Synth, EventsLieInsideTheSpanAndCarrySeedTags) {
  const auto spec = small_spec();
  const auto out = generate(build_scenario(spec));
  const Seconds end = spec.start + spec.total_days() * kSecondsPerDay;
  std::set<std::string> tags;
  for (const auto& ev : out.events) {
    EXPECT_GE(ev.timestamp, spec.start);
    EXPECT_LT(ev.timestamp, end);
    tags.insert(ev.hashtags.begin(), ev.hashtags.end());
  }
  ASSERT_FALSE(out.truth.seeds.empty());
  for (const auto& [tag, leaning] : out.truth.seeds) EXPECT_TRUE(tags.count(tag)) << tag;
}

TEST(Synth, NoiseControlsCrossPoolShare) {
  auto spec = small_spec();
  spec.noise = 0.0;
  EXPECT_EQ(generate(build_scenario(spec)).truth.cross_pool_events, 0u);
  spec.noise = 0.3;
  const auto noisy = generate(build_scenario(spec)).truth;
  const double share = static_cast<double>(noisy.cross_pool_events) / static_cast<double>(noisy.events);
  EXPECT_NEAR(share, 0.3, 0.03);
}

TEST(Synth, ThemeSwitchReplacesTagFromWindow) {
  auto spec = small_spec();
  spec.theme_switch = ThemeSwitch{1, 4};
  std::size_t before = 0;
  std::size_t after = 0;
  for (const auto& ev : generate(build_scenario(spec)).events) {
    const int day = static_cast<int>((ev.timestamp - spec.start) / kSecondsPerDay);
    for (const auto& t : ev.hashtags) {
      if (t == "k1themea") {
        ++before;
        EXPECT_LT(spec.window_of_day(day), 4);
      } else if (t == "k1themeb") {
        ++after;
        EXPECT_GE(spec.window_of_day(day), 4);
      }
    }
  }
  EXPECT_GT(before, 0u);
  EXPECT_GT(after, 0u);
}

TEST(Synth, ValidationRejectsInconsistentSpecs) {
  auto spec = small_spec();
  spec.noise = 1.5;
  EXPECT_THROW(validate(spec), InputError);
  spec = small_spec();
  spec.windows = 0;
  EXPECT_THROW(validate(spec), InputError);
  spec = small_spec();
  spec.influenced_fraction = 0.6;
  spec.volatile_fraction = 0.6;
  EXPECT_THROW(validate(spec), InputError);
  spec = small_spec();
  spec.communities[1].id = spec.communities[0].id;
  EXPECT_THROW(validate(spec), InputError);
  spec = small_spec();
  spec.theme_switch = ThemeSwitch{9, 1};
  EXPECT_THROW(validate(spec), InputError);
}

TEST(Synth, SpecJsonRoundTrip) {
  auto spec = small_spec();
  spec.drift = -0.5;
  spec.theme_switch = ThemeSwitch{2, 3};
  nlohmann::json j = spec;
  const auto back = j.get<ScenarioSpec>();
  EXPECT_EQ(nlohmann::json(back), j);
  EXPECT_THROW(nlohmann::json({{"bogus", 1}}).get<ScenarioSpec>(), InputError);
}

TEST(Synth, GroundTruthRoundTrip) {
  const auto truth = generate(build_scenario(small_spec())).truth;
  oracle::TempDir dir("truth");
  write_ground_truth(truth, dir.path().string());
  const auto back = read_ground_truth(dir.path().string());
  EXPECT_EQ(back.memberships, truth.memberships);
  EXPECT_EQ(back.shifts, truth.shifts);
  EXPECT_EQ(back.archetypes, truth.archetypes);
  EXPECT_EQ(back.seeds, truth.seeds);
  EXPECT_EQ(back.events, truth.events);
  EXPECT_THROW(read_ground_truth((dir.path() / "missing").string()), InputError);
}

}  // namespace
}  // namespace coordyn
