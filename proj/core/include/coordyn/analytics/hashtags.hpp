#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "coordyn/dyncomm.hpp"
#include "coordyn/ingest.hpp"

namespace coordyn {

/// Hashtag -> term frequency.
using HashtagCounts = std::map<std::string, double>;

/// Constant-time (user, window) -> community lookup.
class MembershipIndex {
 public:
  explicit MembershipIndex(const Timelines& timelines);

  /// -1 when the user has no slice in that window.
  int community(const std::string& user, int window) const;
  int window_count() const { return window_count_; }

 private:
  int window_count_ = 0;
  std::unordered_map<std::string, std::vector<int>> by_user_;
};

/// Indices of corpus events that fall in at least one window, ascending.
std::vector<std::size_t> windowed_event_ids(const WindowedCorpus& corpus);

/// Full-period TF per community. An event counts once for every community
/// its author belonged to in some window covering the event.
std::map<int, HashtagCounts> community_hashtag_tf(const Timelines& timelines, const WindowedCorpus& corpus);

/// result[k][i]: TF of community k's members over window i's events.
std::map<int, std::vector<HashtagCounts>> community_window_hashtag_tf(const Timelines& timelines,
                                                                      const WindowedCorpus& corpus);

/// Full-period TF per user, each windowed event counted once.
std::map<std::string, HashtagCounts> user_hashtag_tf(const WindowedCorpus& corpus);

/// result[i][user]: TF of the user's events in window i.
std::vector<std::map<std::string, HashtagCounts>> user_window_hashtag_tf(const WindowedCorpus& corpus);

double cosine_similarity(const HashtagCounts& a, const HashtagCounts& b);

/// Symmetric cosine similarity between community hashtag profiles, unit
/// diagonal. Communities without hashtags score 0 against every other one.
struct SimilarityMatrix {
  std::vector<int> communities;  // ascending ids
  std::vector<std::vector<double>> values;
  std::vector<int> without_hashtags;

  std::size_t index_of(int community) const;
  double at(int a, int b) const;
};

SimilarityMatrix community_similarity(const std::map<int, HashtagCounts>& profiles);

}  // namespace coordyn
