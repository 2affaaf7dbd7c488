#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coordyn/analytics/hashtags.hpp"

namespace coordyn {

struct TrendEntry {
  int community = 0;
  int window = 0;
  int rank = 1;  // 1 is the window's top hashtag
  std::string hashtag;
  double count = 0.0;
};

/// Up to `per_cell` most frequent hashtags for every non-empty (community,
/// window) cell, ties broken by hashtag. Ordered by community, window, rank.
std::vector<TrendEntry> top_hashtag_trends(const std::map<int, std::vector<HashtagCounts>>& community_window_tf,
                                           std::size_t per_cell = 5);

}  // namespace coordyn
