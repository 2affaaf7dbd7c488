#include "coordyn/analytics/trends.hpp"

#include "coordyn/analytics/rbo.hpp"

namespace coordyn {

std::vector<TrendEntry> top_hashtag_trends(const std::map<int, std::vector<HashtagCounts>>& community_window_tf,
                                           std::size_t per_cell) {
  std::vector<TrendEntry> out;
  for (const auto& [community, windows] : community_window_tf) {
    for (std::size_t w = 0; w < windows.size(); ++w) {
      int rank = 0;
      for (const auto& group : rank_by_count(windows[w])) {
        for (const auto& tag : group) {
          if (static_cast<std::size_t>(rank) >= per_cell) break;
          out.push_back({community, static_cast<int>(w), ++rank, tag, windows[w].at(tag)});
        }
      }
    }
  }
  return out;
}

}  // namespace coordyn
