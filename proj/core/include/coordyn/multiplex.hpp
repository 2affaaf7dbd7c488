#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coordyn/simnet.hpp"

namespace coordyn {

/// Identity link between a user's node-slices in two consecutive layers.
/// `layer` indexes MultiplexNetwork::layers; the partner slice lives in
/// layer + 1.
struct Coupling {
  std::size_t layer = 0;
  NodeIndex node = 0;       // index in layers[layer]
  NodeIndex next_node = 0;  // index in layers[layer + 1]

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// Ordered per-window layers plus temporal-chain couplings of uniform
/// strength omega. Node-slices are numbered globally layer by layer, in node
/// order within each layer.
struct MultiplexNetwork {
  std::vector<LayerGraph> layers;
  std::vector<Coupling> couplings;
  double omega = 1.0;

  std::size_t slice_count() const;
  /// Global index of the first slice of each layer, plus a final total.
  std::vector<std::size_t> slice_offsets() const;
  /// Largest window index + 1 (windows without a layer are empty).
  int window_count() const;
};

/// Couples each user present in two list-adjacent layers whose window
/// indices differ by one. Throws InputError on an empty list, unordered
/// windows or negative omega.
MultiplexNetwork assemble_multiplex(std::vector<LayerGraph> layers, double omega);

}  // namespace coordyn
