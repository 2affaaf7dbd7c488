#include "coordyn/analytics/hashtags.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn {

MembershipIndex::MembershipIndex(const Timelines& timelines) : window_count_(timelines.window_count) {
  for (const auto& [id, tl] : timelines.communities) {
    for (std::size_t w = 0; w < tl.members.size(); ++w) {
      for (const auto& user : tl.members[w]) {
        auto [it, fresh] = by_user_.try_emplace(user);
        if (fresh) it->second.assign(window_count_, -1);
        it->second[w] = id;
      }
    }
  }
}

int MembershipIndex::community(const std::string& user, int window) const {
  if (window < 0 || window >= window_count_) return -1;
  auto it = by_user_.find(user);
  return it == by_user_.end() ? -1 : it->second[window];
}

std::vector<std::size_t> windowed_event_ids(const WindowedCorpus& corpus) {
  std::vector<char> seen(corpus.events.size(), 0);
  for (const auto& ids : corpus.window_events) {
    for (auto e : ids) seen[e] = 1;
  }
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < seen.size(); ++e) {
    if (seen[e]) out.push_back(e);
  }
  return out;
}

std::map<int, HashtagCounts> community_hashtag_tf(const Timelines& timelines, const WindowedCorpus& corpus) {
  const MembershipIndex index(timelines);
  std::vector<std::vector<int>> event_communities(corpus.events.size());
  const auto windows = std::min<std::size_t>(corpus.window_events.size(), timelines.window_count);
  for (std::size_t w = 0; w < windows; ++w) {
    for (auto e : corpus.window_events[w]) {
      const int c = index.community(corpus.events[e].user_id, static_cast<int>(w));
      if (c < 0) continue;
      auto& cs = event_communities[e];
      if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.push_back(c);
    }
  }
  std::map<int, HashtagCounts> out;
  for (const auto& [id, tl] : timelines.communities) out[id];
  for (std::size_t e = 0; e < corpus.events.size(); ++e) {
    for (int c : event_communities[e]) {
      for (const auto& tag : corpus.events[e].hashtags) out[c][tag] += 1.0;
    }
  }
  return out;
}

std::map<int, std::vector<HashtagCounts>> community_window_hashtag_tf(const Timelines& timelines,
                                                                      const WindowedCorpus& corpus) {
  const MembershipIndex index(timelines);
  std::map<int, std::vector<HashtagCounts>> out;
  for (const auto& [id, tl] : timelines.communities) out[id].resize(timelines.window_count);
  const auto windows = std::min<std::size_t>(corpus.window_events.size(), timelines.window_count);
  for (std::size_t w = 0; w < windows; ++w) {
    for (auto e : corpus.window_events[w]) {
      const int c = index.community(corpus.events[e].user_id, static_cast<int>(w));
      if (c < 0) continue;
      for (const auto& tag : corpus.events[e].hashtags) out[c][w][tag] += 1.0;
    }
  }
  return out;
}

std::map<std::string, HashtagCounts> user_hashtag_tf(const WindowedCorpus& corpus) {
  std::map<std::string, HashtagCounts> out;
  for (auto e : windowed_event_ids(corpus)) {
    const auto& ev = corpus.events[e];
    auto& tf = out[ev.user_id];
    for (const auto& tag : ev.hashtags) tf[tag] += 1.0;
  }
  return out;
}

std::vector<std::map<std::string, HashtagCounts>> user_window_hashtag_tf(const WindowedCorpus& corpus) {
  std::vector<std::map<std::string, HashtagCounts>> out(corpus.window_events.size());
  for (std::size_t w = 0; w < corpus.window_events.size(); ++w) {
    for (auto e : corpus.window_events[w]) {
      const auto& ev = corpus.events[e];
      auto& tf = out[w][ev.user_id];
      for (const auto& tag : ev.hashtags) tf[tag] += 1.0;
    }
  }
  return out;
}

double cosine_similarity(const HashtagCounts& a, const HashtagCounts& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [tag, x] : a) na += x * x;
  for (const auto& [tag, y] : b) nb += y * y;
  if (na == 0.0 || nb == 0.0) return 0.0;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& [tag, x] : small) {
    auto it = large.find(tag);
    if (it != large.end()) dot += x * it->second;
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

std::size_t SimilarityMatrix::index_of(int community) const {
  auto it = std::lower_bound(communities.begin(), communities.end(), community);
  if (it == communities.end() || *it != community) {
    throw InputError(fmt::format("community {} has no similarity entry", community));
  }
  return static_cast<std::size_t>(it - communities.begin());
}

double SimilarityMatrix::at(int a, int b) const { return values[index_of(a)][index_of(b)]; }

SimilarityMatrix community_similarity(const std::map<int, HashtagCounts>& profiles) {
  SimilarityMatrix m;
  std::vector<const HashtagCounts*> rows;
  for (const auto& [id, tf] : profiles) {
    m.communities.push_back(id);
    rows.push_back(&tf);
    if (tf.empty()) m.without_hashtags.push_back(id);
  }
  const auto n = rows.size();
  m.values.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    m.values[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      m.values[i][j] = m.values[j][i] = cosine_similarity(*rows[i], *rows[j]);
    }
  }
  return m;
}

}  // namespace coordyn
