#include "coordyn/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn {

std::optional<NodeIndex> LayerGraph::find(const std::string& user) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), user);
  if (it == nodes.end() || *it != user) return std::nullopt;
  return static_cast<NodeIndex>(it - nodes.begin());
}

std::vector<double> LayerGraph::strengths() const {
  std::vector<double> s(nodes.size(), 0.0);
  for (const auto& e : edges) {
    s[e.u] += e.weight;
    s[e.v] += e.weight;
  }
  return s;
}

std::vector<std::size_t> LayerGraph::degrees() const {
  std::vector<std::size_t> k(nodes.size(), 0);
  for (const auto& e : edges) {
    ++k[e.u];
    ++k[e.v];
  }
  return k;
}

std::vector<std::vector<std::pair<NodeIndex, double>>> LayerGraph::adjacency() const {
  std::vector<std::vector<std::pair<NodeIndex, double>>> adj(nodes.size());
  for (const auto& e : edges) {
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

LayerGraph make_layer(int window_index, std::vector<std::string> nodes,
                      const std::vector<std::tuple<std::string, std::string, double>>& edges) {
  LayerGraph g;
  g.window_index = window_index;
  for (const auto& [a, b, w] : edges) {
    nodes.push_back(a);
    nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  g.nodes = std::move(nodes);

  std::map<std::pair<NodeIndex, NodeIndex>, double> merged;
  for (const auto& [a, b, w] : edges) {
    if (a == b) throw InputError(fmt::format("self-loop on '{}' in layer {}", a, window_index));
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InputError(fmt::format("edge {}-{} in layer {} has non-positive weight", a, b, window_index));
    }
    NodeIndex u = *g.find(a), v = *g.find(b);
    if (u > v) std::swap(u, v);
    merged[{u, v}] += w;
  }
  g.edges.reserve(merged.size());
  for (const auto& [key, w] : merged) g.edges.push_back({key.first, key.second, w});
  return g;
}

std::vector<UserVector> build_user_vectors(const std::vector<RetweetEvent>& events,
                                           std::span<const std::size_t> window_event_ids) {
  std::map<std::string, std::map<std::string, double>> tf;
  for (std::size_t id : window_event_ids) {
    const auto& ev = events.at(id);
    tf[ev.user_id][ev.original_tweet_id] += 1.0;
  }
  if (tf.empty()) return {};

  std::unordered_map<std::string, std::size_t> df;
  for (const auto& [user, terms] : tf) {
    for (const auto& [term, count] : terms) ++df[term];
  }
  const auto active = static_cast<double>(tf.size());

  std::vector<UserVector> out;
  out.reserve(tf.size());
  for (auto& [user, terms] : tf) {
    UserVector vec;
    vec.user_id = user;
    double sq = 0.0;
    for (const auto& [term, count] : terms) {
      const double idf = std::log(active / static_cast<double>(df[term]));
      const double w = count * idf;
      vec.entries.emplace(term, w);
      sq += w * w;
    }
    vec.norm = std::sqrt(sq);
    out.push_back(std::move(vec));
  }
  return out;
}

std::vector<UserVector> build_user_vectors(const std::vector<RetweetEvent>& window_events) {
  std::vector<std::size_t> ids(window_events.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return build_user_vectors(window_events, ids);
}

LayerGraph build_similarity_layer(const std::vector<UserVector>& vectors, int window_index) {
  LayerGraph g;
  g.window_index = window_index;

  std::vector<const UserVector*> sorted;
  sorted.reserve(vectors.size());
  for (const auto& v : vectors) sorted.push_back(&v);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->user_id < b->user_id; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->user_id == sorted[i - 1]->user_id) {
      throw InputError(fmt::format("duplicate vector for user '{}'", sorted[i]->user_id));
    }
  }
  g.nodes.reserve(sorted.size());
  for (const auto* v : sorted) g.nodes.push_back(v->user_id);

  // Postings over positively weighted terms only: zero-idf terms carry no
  // similarity and must not create edges.
  std::unordered_map<std::string, std::uint32_t> term_ids;
  std::vector<std::vector<std::pair<NodeIndex, double>>> postings;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(sorted.size());
  for (NodeIndex i = 0; i < sorted.size(); ++i) {
    for (const auto& [term, w] : sorted[i]->entries) {
      if (!(w > 0.0)) continue;
      auto [it, fresh] = term_ids.emplace(term, static_cast<std::uint32_t>(postings.size()));
      if (fresh) postings.emplace_back();
      postings[it->second].emplace_back(i, w);
      rows[i].emplace_back(it->second, w);
    }
  }

  std::vector<double> acc(sorted.size(), 0.0);
  std::vector<NodeIndex> touched;
  for (NodeIndex i = 0; i < sorted.size(); ++i) {
    touched.clear();
    for (const auto& [term, wi] : rows[i]) {
      for (const auto& [j, wj] : postings[term]) {
        if (j <= i) continue;
        if (acc[j] == 0.0) touched.push_back(j);
        acc[j] += wi * wj;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (NodeIndex j : touched) {
      const double cosine = std::min(1.0, acc[j] / (sorted[i]->norm * sorted[j]->norm));
      if (cosine > 0.0) g.edges.push_back({i, j, cosine});
      acc[j] = 0.0;
    }
  }
  return g;
}

double disparity_alpha(double weight, double strength, std::size_t degree) {
  if (degree < 2 || strength <= 0.0) return 1.0;
  return std::pow(1.0 - weight / strength, static_cast<double>(degree - 1));
}

LayerGraph disparity_backbone(const LayerGraph& graph, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError(fmt::format("alpha must lie in (0, 1), got {}", alpha));
  const auto k = graph.degrees();
  const auto s = graph.strengths();

  std::vector<WeightedEdge> kept;
  std::vector<char> used(graph.nodes.size(), 0);
  for (const auto& e : graph.edges) {
    const bool dyad = k[e.u] == 1 && k[e.v] == 1;
    const bool from_u = k[e.u] >= 2 && disparity_alpha(e.weight, s[e.u], k[e.u]) < alpha;
    const bool from_v = k[e.v] >= 2 && disparity_alpha(e.weight, s[e.v], k[e.v]) < alpha;
    if (dyad || from_u || from_v) {
      kept.push_back(e);
      used[e.u] = used[e.v] = 1;
    }
  }

  LayerGraph out;
  out.window_index = graph.window_index;
  std::vector<NodeIndex> remap(graph.nodes.size(), 0);
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    if (!used[i]) continue;
    remap[i] = static_cast<NodeIndex>(out.nodes.size());
    out.nodes.push_back(graph.nodes[i]);
  }
  out.edges.reserve(kept.size());
  for (const auto& e : kept) out.edges.push_back({remap[e.u], remap[e.v], e.weight});
  return out;
}

LayerGraph aggregate_static_network(const std::vector<LayerGraph>& layers) {
  if (layers.empty()) throw InputError("cannot aggregate zero layers");
  std::map<std::pair<std::string, std::string>, double> sums;
  std::vector<std::string> nodes;
  for (const auto& layer : layers) {
    nodes.insert(nodes.end(), layer.nodes.begin(), layer.nodes.end());
    for (const auto& e : layer.edges) sums[{layer.nodes[e.u], layer.nodes[e.v]}] += e.weight;
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  LayerGraph out;
  out.window_index = layers.size() == 1 ? layers.front().window_index : -1;
  out.nodes = std::move(nodes);
  out.edges.reserve(sums.size());
  for (const auto& [key, w] : sums) {
    NodeIndex u = *out.find(key.first), v = *out.find(key.second);
    out.edges.push_back({u, v, w});
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const auto& a, const auto& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  return out;
}

}  // namespace coordyn
