#pragma once

#include <string>
#include <vector>

#include "coordyn/simnet.hpp"

namespace coordyn {

/// Unweighted hop distance from `source` to every node; -1 if unreachable.
std::vector<int> hop_distances(const LayerGraph& layer, NodeIndex source);

/// Harmonic closeness of `user` to a target group:
/// (1/|T|) * sum_{v in T} 1/d(user, v) with T = targets minus the user.
/// Targets missing from the layer count as unreachable. Throws InputError
/// when the user is not in the layer or T is empty.
double closeness_to_community(const LayerGraph& layer, const std::string& user,
                              const std::vector<std::string>& targets);

}  // namespace coordyn
