#pragma once

#include <cstddef>
#include <vector>

#include "coordyn/dyncomm.hpp"

namespace coordyn {

/// Per-window stability of one community, indexed by absolute window. Entries
/// before `anchor_window` are zero.
struct StabilitySeries {
  int community = 0;
  int anchor_window = 0;
  std::vector<std::size_t> size;
  std::vector<double> relative_size;  // size(i) / size(anchor)
  std::vector<double> jaccard;        // J(mem(anchor), mem(i))
  std::vector<std::size_t> influx;    // distinct users that joined up to i
  std::vector<std::size_t> outflux;   // distinct users that left up to i
};

struct StabilityOptions {
  /// Fail instead of anchoring late when a community is empty in window 0.
  bool require_anchor_at_start = false;
};

/// One series per community, ascending id. Communities empty in window 0
/// anchor at their first non-empty window.
std::vector<StabilitySeries> stability_metrics(const Timelines& timelines, const StabilityOptions& options = {});

StabilitySeries stability_series(const CommunityTimeline& timeline, const StabilityOptions& options = {});

}  // namespace coordyn
