#include <gtest/gtest.h>

#include "coordyn/analytics.hpp"
#include "coordyn/error.hpp"

namespace coordyn {
namespace {

UserPath consecutive(std::vector<int> communities) {
  UserPath p;
  for (std::size_t i = 0; i < communities.size(); ++i) p.emplace_back(static_cast<int>(i), communities[i]);
  return p;
}

TEST(Archetypes, ThirdRoundsUp) {
  EXPECT_EQ(third_of(9), 3u);
  EXPECT_EQ(third_of(10), 4u);
  EXPECT_EQ(third_of(25), 9u);
}

TEST(Archetypes, EvidenceOfPath) {
  const auto e = archetype_evidence(consecutive({0, 0, 1, 1, 1, 0, 2, 2}));
  EXPECT_EQ(e.active_windows, 8u);
  EXPECT_EQ(e.shifts, 3u);
  EXPECT_EQ(e.distinct_communities, 3u);
  EXPECT_EQ(e.max_windows_in_community, 3u);
  EXPECT_EQ(e.final_destination, 2);
  EXPECT_EQ(e.final_hold, 2u);
  EXPECT_EQ(archetype_evidence(consecutive({4, 4})).final_destination, -1);
}

TEST(Archetypes, LabelRules) {
  EXPECT_EQ(label_from_evidence(archetype_evidence(consecutive({1, 1, 1})), 9), Archetype::stationary);
  EXPECT_EQ(label_from_evidence(archetype_evidence(consecutive({0, 1, 1, 1})), 9), Archetype::influenced);
  EXPECT_EQ(label_from_evidence(archetype_evidence(consecutive({0, 1, 1})), 9), Archetype::other);
  EXPECT_EQ(label_from_evidence(archetype_evidence(consecutive({0, 1, 2, 3})), 9), Archetype::volatile_);
  // three shifts, but one community is held for a third of the windows
  EXPECT_EQ(label_from_evidence(archetype_evidence(consecutive({0, 1, 0, 1, 1, 1})), 9), Archetype::influenced);
}

TEST(Archetypes, MinimumActivityDemotesToOther) {
  const UserPaths paths{{"brief", {{3, 0}}}, {"steady", consecutive({0, 0, 0})}};
  const auto labels = classify_archetypes(paths, 9, {2});
  ASSERT_EQ(labels.size(), 2u);
  EXPECT_EQ(labels[0].user_id, "brief");
  EXPECT_EQ(labels[0].label, Archetype::other);
  EXPECT_EQ(labels[1].label, Archetype::stationary);
  const auto counts = archetype_counts(labels);
  EXPECT_EQ(counts.at(Archetype::other), 1u);
  EXPECT_EQ(counts.at(Archetype::stationary), 1u);
}

TEST(Archetypes, NamesRoundTrip) {
  for (auto a : {Archetype::stationary, Archetype::influenced, Archetype::volatile_, Archetype::other}) {
    EXPECT_EQ(parse_archetype(archetype_name(a)), a);
  }
  EXPECT_EQ(archetype_name(Archetype::volatile_), "volatile");
  EXPECT_THROW(parse_archetype("drifter"), InputError);
}

TEST(ShiftDistances, GroupedByArchetypeWithPairwiseTests) {
  const std::vector<ArchetypeLabel> labels{{"v", Archetype::volatile_, {}},
                                           {"i", Archetype::influenced, {}},
                                           {"o", Archetype::other, {}}};
  const std::vector<ShiftRecord> shifts{{"v", 1, 0, 1, 0.9}, {"v", 2, 1, 0, 0.8}, {"v", 3, 0, 1, 0.7},
                                        {"i", 2, 0, 1, 0.1}, {"i", 4, 1, 2, 0.2}, {"o", 5, 2, 0, 0.5}};
  const auto d = shift_distance_distributions(shifts, labels);
  EXPECT_EQ(d.samples.at(Archetype::volatile_), (std::vector<double>{0.9, 0.8, 0.7}));
  EXPECT_EQ(d.samples.at(Archetype::influenced), (std::vector<double>{0.1, 0.2}));
  ASSERT_EQ(d.tests.size(), 3u);
  std::size_t tested = 0;
  for (const auto& t : d.tests) {
    const bool has_other = t.a == Archetype::other || t.b == Archetype::other;
    EXPECT_EQ(t.test.has_value(), !has_other);
    tested += t.test ? 1 : 0;
  }
  EXPECT_EQ(tested, 1u);
}

}  // namespace
}  // namespace coordyn
