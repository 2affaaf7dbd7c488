#pragma once

#include <map>
#include <string>
#include <vector>

#include "coordyn/dyncomm.hpp"

namespace coordyn {

/// overlap[k][j] = |static_k ∩ dynamic_j| / |static_k|.
struct OverlapMatrix {
  std::vector<int> static_ids;
  std::vector<int> dynamic_ids;
  std::vector<std::vector<double>> values;

  double at(int static_id, int dynamic_id) const;
};

/// Dynamic membership is the union over windows, so a row may sum above 1.
OverlapMatrix partition_overlap(const std::map<std::string, int>& static_partition, const Timelines& dynamic);

/// Dynamic membership is each user's most frequent community (ties to the
/// lower id), so rows sum to at most 1.
OverlapMatrix partition_overlap_dominant(const std::map<std::string, int>& static_partition, const Timelines& dynamic);

}  // namespace coordyn
