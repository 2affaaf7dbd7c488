#include <gtest/gtest.h>

#include "coordyn/analytics.hpp"
#include "coordyn/error.hpp"

namespace coordyn {
namespace {

Timelines dynamic_fixture() {
  DynamicPartition p;
  // a: 5, 5, 6 -> dominant 5; b: 5, 6 -> tie, dominant 5; c: 6
  p.rows = {{"a", 0, 5}, {"a", 1, 5}, {"a", 2, 6}, {"b", 0, 5}, {"b", 1, 6}, {"c", 0, 6}};
  return community_timelines(p, 3);
}

TEST(Overlap, UnionMembershipCanExceedOne) {
  const std::map<std::string, int> fixed{{"a", 0}, {"b", 0}, {"c", 1}};
  const auto m = partition_overlap(fixed, dynamic_fixture());
  EXPECT_EQ(m.static_ids, (std::vector<int>{0, 1}));
  EXPECT_EQ(m.dynamic_ids, (std::vector<int>{5, 6}));
  EXPECT_EQ(m.at(0, 5), 1.0);
  EXPECT_EQ(m.at(0, 6), 1.0);
  EXPECT_EQ(m.at(1, 5), 0.0);
  EXPECT_EQ(m.at(1, 6), 1.0);
}

TEST(Overlap, DominantMembershipRowsSumToAtMostOne) {
  const std::map<std::string, int> fixed{{"a", 0}, {"b", 0}, {"c", 1}, {"absent", 1}};
  const auto m = partition_overlap_dominant(fixed, dynamic_fixture());
  EXPECT_EQ(m.at(0, 5), 1.0);
  EXPECT_EQ(m.at(0, 6), 0.0);
  EXPECT_EQ(m.at(1, 6), 0.5);
  EXPECT_THROW(m.at(3, 5), InputError);
}

}  // namespace
}  // namespace coordyn
