#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coordyn/ingest.hpp"

namespace coordyn {

/// TF-IDF profile of one user over one window. Terms are original tweet ids.
struct UserVector {
  std::string user_id;
  std::map<std::string, double> entries;
  double norm = 0.0;
};

using NodeIndex = std::uint32_t;

struct WeightedEdge {
  NodeIndex u = 0;  // u < v; nodes are sorted by id so this is id order too
  NodeIndex v = 0;
  double weight = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Weighted undirected user-similarity graph for one window. `nodes` is
/// sorted by id and edges are sorted by (u, v), each pair stored once.
struct LayerGraph {
  int window_index = 0;
  std::vector<std::string> nodes;
  std::vector<WeightedEdge> edges;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t edge_count() const { return edges.size(); }
  std::optional<NodeIndex> find(const std::string& user) const;
  std::vector<double> strengths() const;
  std::vector<std::size_t> degrees() const;
  /// Adjacency lists (neighbour, weight), neighbours ascending.
  std::vector<std::vector<std::pair<NodeIndex, double>>> adjacency() const;
};

/// Builds a layer from (user, user, weight) triples. Pairs are canonicalised
/// and duplicate pairs summed; self-loops and non-positive weights are
/// rejected with InputError.
LayerGraph make_layer(int window_index, std::vector<std::string> nodes,
                      const std::vector<std::tuple<std::string, std::string, double>>& edges);

/// tf(u,t) = retweets of t by u in the window; idf(t) = ln(|U| / df(t)).
/// Output is sorted by user id.
std::vector<UserVector> build_user_vectors(const std::vector<RetweetEvent>& events,
                                           std::span<const std::size_t> window_event_ids);
std::vector<UserVector> build_user_vectors(const std::vector<RetweetEvent>& window_events);

/// Cosine similarity over users sharing at least one positively weighted
/// term. Node set is every user with a vector.
LayerGraph build_similarity_layer(const std::vector<UserVector>& vectors, int window_index);

/// Disparity-filter significance of edge weight w at a node of strength s
/// and degree k: (1 - w/s)^(k-1).
double disparity_alpha(double weight, double strength, std::size_t degree);

/// Multiscale backbone: keeps an edge when it is significant (alpha_ij <
/// alpha) from at least one endpoint of degree >= 2, or when both endpoints
/// have degree 1. Nodes left without edges are dropped.
LayerGraph disparity_backbone(const LayerGraph& graph, double alpha);

/// Sums all layers into one graph over the union of their nodes. Used as the
/// static baseline; its weights are not bounded by 1.
LayerGraph aggregate_static_network(const std::vector<LayerGraph>& layers);

}  // namespace coordyn
