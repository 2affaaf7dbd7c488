#include "coordyn/analytics/polarity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn {

namespace {

struct CooccurrenceGraph {
  std::vector<std::string> tags;  // sorted
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
};

// Edge weight counts distinct original tweets carrying both tags; retweets
// of one tweet repeat its hashtags and would otherwise inflate the count.
CooccurrenceGraph build_cooccurrence(const std::vector<RetweetEvent>& events) {
  std::map<std::string, const std::vector<std::string>*> tweets;
  std::set<std::string> all;
  for (const auto& e : events) {
    tweets.try_emplace(e.original_tweet_id, &e.hashtags);
    all.insert(e.hashtags.begin(), e.hashtags.end());
  }
  CooccurrenceGraph g;
  g.tags.assign(all.begin(), all.end());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.tags.size(); ++i) index.emplace(g.tags[i], i);

  std::map<std::pair<std::size_t, std::size_t>, double> weight;
  for (const auto& [id, tags] : tweets) {
    std::vector<std::size_t> ids;
    for (const auto& t : *tags) ids.push_back(index.at(t));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) weight[{ids[a], ids[b]}] += 1.0;
    }
  }
  g.adjacency.resize(g.tags.size());
  for (const auto& [pair, w] : weight) {
    g.adjacency[pair.first].emplace_back(pair.second, w);
    g.adjacency[pair.second].emplace_back(pair.first, w);
  }
  return g;
}

}  // namespace

PolarityMap hashtag_polarity(const std::vector<RetweetEvent>& events, const std::map<std::string, int>& seeds,
                             const PolarityOptions& options) {
  bool negative = false;
  bool positive = false;
  for (const auto& [tag, v] : seeds) {
    if (v < -1 || v > 1) throw InputError(fmt::format("seed '{}' has value {}; expected -1, 0 or 1", tag, v));
    negative |= v < 0;
    positive |= v > 0;
  }
  if (!negative || !positive) throw InputError("polarity needs at least one negative and one positive seed");
  if (options.max_iterations < 1 || !(options.tolerance > 0.0)) throw InputError("invalid polarity options");

  const auto g = build_cooccurrence(events);
  const auto n = g.tags.size();
  std::vector<double> p(n, 0.0);
  std::vector<char> clamped(n, 0);
  std::vector<char> reached(n, 0);
  std::deque<std::size_t> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = seeds.find(g.tags[i]);
    if (it == seeds.end()) continue;
    p[i] = it->second;
    clamped[i] = 1;
    reached[i] = 1;
    frontier.push_back(i);
  }
  while (!frontier.empty()) {
    const auto v = frontier.front();
    frontier.pop_front();
    for (const auto& [u, w] : g.adjacency[v]) {
      if (!reached[u]) {
        reached[u] = 1;
        frontier.push_back(u);
      }
    }
  }

  PolarityMap out;
  out.seeds = seeds;
  std::vector<double> next(n);
  for (int it = 0; it < options.max_iterations; ++it) {
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      next[v] = p[v];
      if (clamped[v] || !reached[v]) continue;
      double num = 0.0;
      double den = 0.0;
      for (const auto& [u, w] : g.adjacency[v]) {
        num += w * p[u];
        den += w;
      }
      if (den > 0.0) next[v] = num / den;
      change = std::max(change, std::abs(next[v] - p[v]));
    }
    p.swap(next);
    out.iterations = it + 1;
    if (change < options.tolerance) {
      out.converged = true;
      break;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    out.hashtag[g.tags[v]] = p[v];
    if (!reached[v]) out.unreached.push_back(g.tags[v]);
  }
  // Seeds never used in the corpus still report their value.
  for (const auto& [tag, v] : seeds) out.hashtag.try_emplace(tag, v);
  return out;
}

void assign_community_polarity(PolarityMap& polarity, const std::map<int, HashtagCounts>& community_tf) {
  polarity.community_raw.clear();
  polarity.community.clear();
  double max_positive = 0.0;
  double min_negative = 0.0;
  for (const auto& [id, tf] : community_tf) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& [tag, count] : tf) {
      auto it = polarity.hashtag.find(tag);
      if (it == polarity.hashtag.end()) continue;
      num += count * it->second;
      den += count;
    }
    const double raw = den > 0.0 ? num / den : 0.0;
    polarity.community_raw[id] = raw;
    max_positive = std::max(max_positive, raw);
    min_negative = std::min(min_negative, raw);
  }
  for (const auto& [id, raw] : polarity.community_raw) {
    double v = 0.0;
    if (raw > 0.0) v = raw / max_positive;
    if (raw < 0.0) v = raw / -min_negative;
    polarity.community[id] = v;
  }
}

}  // namespace coordyn
