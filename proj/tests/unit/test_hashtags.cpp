#include <cmath>

#include <gtest/gtest.h>

#include "coordyn/analytics.hpp"

namespace coordyn {
namespace {

constexpr Seconds kDay = kSecondsPerDay;

// Windows [0,2) and [1,3) days. u1 sits in community 0 then 1; u2 is always
// in community 0; a late event by u2 falls in no window.
struct Fixture {
  WindowedCorpus corpus;
  Timelines timelines;

  Fixture() {
    const std::vector<RetweetEvent> events{{"u1", "e1", "o1", kDay / 2, {"x"}},
                                           {"u1", "e2", "o2", 3 * kDay / 2, {"y"}},
                                           {"u2", "e3", "o3", kDay / 2, {"x", "z"}},
                                           {"u2", "e4", "o4", 5 * kDay, {"late"}}};
    corpus = window_events(events, make_windows(0, 3 * kDay, 2, 1), {"u1", "u2"});
    DynamicPartition p;
    p.rows = {{"u1", 0, 0}, {"u2", 0, 0}, {"u1", 1, 1}, {"u2", 1, 0}};
    timelines = community_timelines(p, 2);
  }
};

TEST(Hashtags, MembershipIndexLookup) {
  Fixture f;
  MembershipIndex index(f.timelines);
  EXPECT_EQ(index.window_count(), 2);
  EXPECT_EQ(index.community("u1", 0), 0);
  EXPECT_EQ(index.community("u1", 1), 1);
  EXPECT_EQ(index.community("nobody", 1), -1);
  EXPECT_EQ(index.community("u1", 7), -1);
}

TEST(Hashtags, WindowedEventsExcludeUncovered) {
  Fixture f;
  EXPECT_EQ(windowed_event_ids(f.corpus), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Hashtags, CommunityTfCountsEachEventOncePerCommunity) {
  Fixture f;
  const auto tf = community_hashtag_tf(f.timelines, f.corpus);
  // e2 lies in both windows: u1 is in community 0 for one, 1 for the other
  EXPECT_EQ(tf.at(0), (HashtagCounts{{"x", 2}, {"y", 1}, {"z", 1}}));
  EXPECT_EQ(tf.at(1), (HashtagCounts{{"y", 1}}));
}

TEST(Hashtags, PerWindowTf) {
  Fixture f;
  const auto by_window = community_window_hashtag_tf(f.timelines, f.corpus);
  EXPECT_EQ(by_window.at(0)[0], (HashtagCounts{{"x", 2}, {"y", 1}, {"z", 1}}));
  EXPECT_TRUE(by_window.at(0)[1].empty());
  EXPECT_EQ(by_window.at(1)[1], (HashtagCounts{{"y", 1}}));
  const auto users = user_window_hashtag_tf(f.corpus);
  EXPECT_EQ(users[1].at("u1"), (HashtagCounts{{"y", 1}}));
  EXPECT_FALSE(users[1].count("u2"));
  EXPECT_EQ(user_hashtag_tf(f.corpus).at("u1"), (HashtagCounts{{"x", 1}, {"y", 1}}));
}

TEST(Similarity, CosineAndMatrix) {
  EXPECT_DOUBLE_EQ(cosine_similarity({{"a", 3}, {"b", 4}}, {{"a", 1}}), 0.6);
  EXPECT_EQ(cosine_similarity({}, {{"a", 1}}), 0.0);
  const auto m = community_similarity({{2, {{"a", 1}}}, {5, {}}, {9, {{"a", 1}, {"b", 1}}}});
  EXPECT_EQ(m.communities, (std::vector<int>{2, 5, 9}));
  EXPECT_EQ(m.without_hashtags, (std::vector<int>{5}));
  EXPECT_EQ(m.at(2, 2), 1.0);
  EXPECT_EQ(m.at(2, 5), 0.0);
  EXPECT_NEAR(m.at(9, 2), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(m.at(2, 9), m.at(9, 2));
  EXPECT_EQ(m.index_of(9), 2u);
}

}  // namespace
}  // namespace coordyn
