#include "coordyn/dyncomm.hpp"

#include <unordered_map>

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn {

std::vector<int> DynamicPartition::labels() const {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.community);
  return out;
}

double multislice_modularity(const MultiplexNetwork& network, std::span<const int> labels, double gamma) {
  const auto offsets = network.slice_offsets();
  if (labels.size() != offsets.back()) {
    throw InputError(fmt::format("labelling covers {} slices, network has {}", labels.size(), offsets.back()));
  }

  double total = 0.0;  // 2 mu
  double inside = 0.0;
  double null_term = 0.0;
  std::unordered_map<int, double> community_strength;
  for (std::size_t s = 0; s < network.layers.size(); ++s) {
    const auto& layer = network.layers[s];
    const auto k = layer.strengths();
    const std::size_t base = offsets[s];
    double two_m = 0.0;
    for (const auto& e : layer.edges) {
      two_m += 2.0 * e.weight;
      if (labels[base + e.u] == labels[base + e.v]) inside += 2.0 * e.weight;
    }
    total += two_m;
    if (two_m <= 0.0) continue;
    community_strength.clear();
    double strength_total = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      community_strength[labels[base + i]] += k[i];
      strength_total += k[i];
    }
    // Shares of the layer's own strength total, so a single community
    // cancels the internal weight exactly.
    double shares = 0.0;
    for (const auto& [c, kc] : community_strength) shares += (kc / strength_total) * (kc / strength_total);
    null_term += two_m * shares;
  }
  for (const auto& c : network.couplings) {
    total += 2.0 * network.omega;
    if (labels[offsets[c.layer] + c.node] == labels[offsets[c.layer + 1] + c.next_node]) {
      inside += 2.0 * network.omega;
    }
  }
  if (total <= 0.0) return 0.0;
  return (inside - gamma * null_term) / total;
}

double multislice_modularity(const MultiplexNetwork& network, const DynamicPartition& partition, double gamma) {
  std::map<std::pair<int, std::string>, int> lookup;
  for (const auto& r : partition.rows) lookup.emplace(std::make_pair(r.window_index, r.user_id), r.community);
  std::vector<int> labels;
  labels.reserve(network.slice_count());
  for (const auto& layer : network.layers) {
    for (const auto& user : layer.nodes) {
      auto it = lookup.find({layer.window_index, user});
      if (it == lookup.end()) {
        throw InputError(fmt::format("partition has no community for user '{}' in window {}", user,
                                     layer.window_index));
      }
      labels.push_back(it->second);
    }
  }
  return multislice_modularity(network, labels, gamma);
}

}  // namespace coordyn
