#include "coordyn/analytics/closeness.hpp"

#include <deque>

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn {

std::vector<int> hop_distances(const LayerGraph& layer, NodeIndex source) {
  const auto adjacency = layer.adjacency();
  std::vector<int> dist(layer.node_count(), -1);
  dist.at(source) = 0;
  std::deque<NodeIndex> queue{source};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (const auto& [u, w] : adjacency[v]) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

double closeness_to_community(const LayerGraph& layer, const std::string& user,
                              const std::vector<std::string>& targets) {
  const auto source = layer.find(user);
  if (!source) {
    throw InputError(fmt::format("user '{}' is not in the layer of window {}", user, layer.window_index));
  }
  const auto dist = hop_distances(layer, *source);
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& t : targets) {
    if (t == user) continue;
    ++count;
    const auto v = layer.find(t);
    if (v && dist[*v] > 0) sum += 1.0 / dist[*v];
  }
  if (count == 0) throw InputError(fmt::format("closeness of '{}' has no targets", user));
  return sum / static_cast<double>(count);
}

}  // namespace coordyn
