#include "coordyn/multiplex.hpp"

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn {

std::size_t MultiplexNetwork::slice_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.node_count();
  return n;
}

std::vector<std::size_t> MultiplexNetwork::slice_offsets() const {
  std::vector<std::size_t> off(layers.size() + 1, 0);
  for (std::size_t i = 0; i < layers.size(); ++i) off[i + 1] = off[i] + layers[i].node_count();
  return off;
}

int MultiplexNetwork::window_count() const { return layers.empty() ? 0 : layers.back().window_index + 1; }

MultiplexNetwork assemble_multiplex(std::vector<LayerGraph> layers, double omega) {
  if (layers.empty()) throw InputError("multiplex needs at least one layer");
  if (!(omega >= 0.0)) throw InputError(fmt::format("omega must be non-negative, got {}", omega));
  for (std::size_t i = 1; i < layers.size(); ++i) {
    if (layers[i].window_index <= layers[i - 1].window_index) {
      throw InputError(fmt::format("layers out of order: window {} follows {}", layers[i].window_index,
                                   layers[i - 1].window_index));
    }
  }

  MultiplexNetwork net;
  net.omega = omega;
  for (std::size_t s = 0; s + 1 < layers.size(); ++s) {
    if (layers[s + 1].window_index != layers[s].window_index + 1) continue;
    const auto& a = layers[s].nodes;
    const auto& b = layers[s + 1].nodes;
    // Both node lists are sorted: merge-walk.
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) {
        ++i;
      } else if (b[j] < a[i]) {
        ++j;
      } else {
        net.couplings.push_back({s, static_cast<NodeIndex>(i), static_cast<NodeIndex>(j)});
        ++i;
        ++j;
      }
    }
  }
  net.layers = std::move(layers);
  return net;
}

}  // namespace coordyn
