#include <gtest/gtest.h>

#include "coordyn/dyncomm.hpp"
#include "coordyn/error.hpp"

namespace coordyn {
namespace {

DynamicPartition sample() {
  DynamicPartition p;
  p.rows = {{"b", 0, 0}, {"a", 0, 0}, {"c", 0, 1}, {"a", 1, 1}, {"c", 1, 1}, {"b", 2, 0}, {"d", 2, 2}};
  return p;
}

TEST(Timelines, MembersPerWindowSorted) {
  const auto t = community_timelines(sample());
  EXPECT_EQ(t.window_count, 3);
  const auto& c0 = t.at(0);
  EXPECT_EQ(c0.members, (std::vector<std::vector<std::string>>{{"a", "b"}, {}, {"b"}}));
  EXPECT_EQ(c0.distinct_members, 2u);
  EXPECT_EQ(t.at(1).distinct_members, 2u);
  EXPECT_THROW(t.at(5), InputError);
}

TEST(Timelines, ExplicitWindowCountPadsAndValidates) {
  EXPECT_EQ(community_timelines(sample(), 5).at(2).members.size(), 5u);
  EXPECT_THROW(community_timelines(sample(), 2), InputError);
}

TEST(Timelines, TopCommunitiesByDistinctMembersThenId) {
  const auto t = community_timelines(sample());
  EXPECT_EQ(t.top(2), (std::vector<int>{0, 1}));
  EXPECT_EQ(t.top(10), (std::vector<int>{0, 1, 2}));
}

TEST(Trajectories, PathsInWindowOrderFromEitherSource) {
  const auto from_partition = user_trajectories(sample());
  EXPECT_EQ(from_partition.at("a"), (UserPath{{0, 0}, {1, 1}}));
  EXPECT_EQ(from_partition.at("b"), (UserPath{{0, 0}, {2, 0}}));
  EXPECT_EQ(user_trajectories(community_timelines(sample())), from_partition);
}

TEST(Trajectories, RejectsTwoCommunitiesInOneWindow) {
  auto p = sample();
  p.rows.push_back({"a", 0, 1});
  EXPECT_THROW(user_trajectories(p), InputError);
}

}  // namespace
}  // namespace coordyn
