#include <gtest/gtest.h>

#include "coordyn/score.hpp"

namespace coordyn {
namespace {

GroundTruth planted() {
  GroundTruth t;
  t.memberships = {{"a", 0, 0}, {"b", 0, 0}, {"c", 0, 1}, {"d", 0, 1},
                   {"a", 1, 0}, {"b", 1, 1}, {"c", 1, 1}, {"d", 1, 1}};
  t.shifts = {{"b", 1, 0, 1, 0.0}};
  t.archetypes = {{"a", Archetype::stationary}, {"b", Archetype::influenced}};
  return t;
}

DynamicPartition relabelled() {
  DynamicPartition p;
  p.rows = {{"a", 0, 7}, {"b", 0, 7}, {"c", 0, 3}, {"d", 0, 3}, {"a", 1, 7}, {"b", 1, 3}, {"c", 1, 3}, {"d", 1, 3},
            {"stranger", 1, 9}};
  return p;
}

TEST(Score, PerfectPartitionUpToLabels) {
  const auto s = score_recovery(planted(), relabelled(), {}, {});
  EXPECT_EQ(s.window_nmi, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(s.mean_nmi, 1.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
}

TEST(Score, ShiftMatchingWithinTolerance) {
  const std::vector<ShiftRecord> recovered{{"b", 2, 7, 3, 0.0}, {"c", 1, 3, 7, 0.0}};
  const auto s = score_recovery(planted(), relabelled(), recovered, {});
  EXPECT_EQ(s.planted_shifts, 1u);
  EXPECT_EQ(s.recovered_shifts, 2u);
  EXPECT_EQ(s.matched_shifts, 1u);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.f1, 2.0 / 3.0);
  EXPECT_EQ(score_recovery(planted(), relabelled(), {{"b", 3, 7, 3, 0.0}}, {}).matched_shifts, 0u);
  EXPECT_EQ(score_recovery(planted(), relabelled(), {{"b", 3, 7, 3, 0.0}}, {}, 2).matched_shifts, 1u);
}

TEST(Score, MatchingIsOneToOne) {
  auto truth = planted();
  truth.shifts = {{"b", 2, 0, 1, 0.0}, {"b", 4, 1, 0, 0.0}};
  const auto s = score_recovery(truth, relabelled(), {{"b", 3, 7, 3, 0.0}}, {});
  EXPECT_EQ(s.matched_shifts, 1u);
}

TEST(Score, ConfusionOverCommonUsers) {
  const std::vector<ArchetypeLabel> labels{
      {"a", Archetype::stationary, {}}, {"b", Archetype::other, {}}, {"z", Archetype::stationary, {}}};
  const auto s = score_recovery(planted(), relabelled(), {}, labels);
  EXPECT_EQ(s.confusion.at(Archetype::stationary).at(Archetype::stationary), 1u);
  EXPECT_EQ(s.confusion.at(Archetype::influenced).at(Archetype::other), 1u);
  EXPECT_EQ(s.confusion.size(), 2u);
}

TEST(Score, WindowWithoutCommonUsersIsUnscored) {
  DynamicPartition p;
  p.rows = {{"a", 0, 0}, {"b", 0, 0}, {"c", 0, 1}, {"d", 0, 1}};
  const auto s = score_recovery(planted(), p, {}, {});
  EXPECT_EQ(s.window_nmi, (std::vector<double>{1.0, -1.0}));
  EXPECT_EQ(s.mean_nmi, 1.0);
}

}  // namespace
}  // namespace coordyn
