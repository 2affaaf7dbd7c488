#include <gtest/gtest.h>

#include "coordyn/analytics.hpp"
#include "coordyn/error.hpp"

namespace coordyn {
namespace {

Timelines timelines_of(const std::vector<Membership>& rows, int windows) {
  DynamicPartition p;
  p.rows = rows;
  return community_timelines(p, windows);
}

TEST(Stability, TracksAnchorWindow) {
  const auto t = timelines_of({{"a", 0, 0}, {"b", 0, 0}, {"b", 1, 0}, {"c", 1, 0}, {"c", 2, 0}, {"d", 2, 0}}, 3);
  const auto s = stability_series(t.at(0));
  EXPECT_EQ(s.anchor_window, 0);
  EXPECT_EQ(s.size, (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(s.relative_size, (std::vector<double>{1.0, 1.0, 1.0}));
  EXPECT_EQ(s.jaccard, (std::vector<double>{1.0, 1.0 / 3.0, 0.0}));
  EXPECT_EQ(s.influx, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(s.outflux, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Stability, ReturningUserCountsOnceEachWay) {
  const auto t = timelines_of({{"a", 0, 0}, {"b", 0, 0}, {"a", 1, 0}, {"b", 2, 0}, {"a", 2, 0}, {"b", 3, 0}, {"a", 3, 0}, {"a", 4, 0}}, 5);
  const auto s = stability_series(t.at(0));
  EXPECT_EQ(s.influx.back(), 1u);
  EXPECT_EQ(s.outflux.back(), 1u);
  EXPECT_EQ(s.relative_size, (std::vector<double>{1.0, 0.5, 1.0, 1.0, 0.5}));
}

TEST(Stability, LateCommunityAnchorsAtFirstWindow) {
  const auto t = timelines_of({{"a", 0, 0}, {"b", 1, 1}, {"c", 1, 1}, {"b", 2, 1}}, 3);
  const auto all = stability_metrics(t);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[1].community, 1);
  EXPECT_EQ(all[1].anchor_window, 1);
  EXPECT_EQ(all[1].relative_size, (std::vector<double>{0.0, 1.0, 0.5}));
  EXPECT_EQ(all[1].jaccard, (std::vector<double>{0.0, 1.0, 0.5}));
  EXPECT_THROW(stability_metrics(t, {true}), InputError);
}

TEST(Stability, EmptyTimelineIsAnError) {
  CommunityTimeline empty;
  empty.members.resize(3);
  EXPECT_THROW(stability_series(empty), InputError);
}

}  // namespace
}  // namespace coordyn
