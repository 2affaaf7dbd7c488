#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "coordyn/multiplex.hpp"

namespace coordyn {

/// Community of one node-slice.
struct Membership {
  std::string user_id;
  int window_index = 0;
  int community = 0;

  friend bool operator==(const Membership&, const Membership&) = default;
};

/// Assignment of every (user, window) node-slice to a community spanning
/// layers. Rows produced by leiden_partition follow the network's global
/// slice order (window, then user id).
struct DynamicPartition {
  std::vector<Membership> rows;
  int community_count = 0;
  double quality = 0.0;
  /// Quality after each optimisation pass.
  std::vector<double> pass_quality;

  std::vector<int> labels() const;
};

struct ResolutionConfig {
  double gamma = 1.0;
  /// Coupling strength handed to assemble_multiplex by the pipeline; the
  /// optimiser itself reads MultiplexNetwork::omega.
  double omega = 1.0;
  std::uint64_t seed = 42;
  int max_passes = 20;
  /// A pass improving quality by less than this ends the run.
  double tolerance = 1e-10;
  /// Networks with at most this many node-slices are solved by enumerating
  /// every set partition after the heuristic passes. 0 disables.
  int exact_limit = 10;
};

/// Multislice modularity of a slice-indexed labelling:
///   Q = 1/(2mu) * sum_{ijsr} [(A_ijs - gamma k_is k_js / 2m_s) delta_sr
///                             + delta_ij C_jsr] delta(g_is, g_jr)
/// Layers without edges contribute no null-model term.
double multislice_modularity(const MultiplexNetwork& network, std::span<const int> labels, double gamma);

/// Same, for a partition keyed by (user, window). Throws InputError naming
/// the first node-slice the partition does not cover.
double multislice_modularity(const MultiplexNetwork& network, const DynamicPartition& partition, double gamma);

/// Leiden optimisation of multislice modularity (local moving over
/// node-slices, connectivity-preserving refinement, aggregation), repeated
/// in passes until the gain drops below `tolerance`. Communities are
/// relabelled 0..C-1 by descending distinct-user count.
DynamicPartition leiden_partition(const MultiplexNetwork& network, const ResolutionConfig& config);

/// Relabels communities 0..C-1 by descending distinct users, then slices,
/// then first slice position.
void compact_partition(DynamicPartition& partition);

struct CommunityTimeline {
  int community = 0;
  /// members[i] = sorted users assigned to this community in window i.
  std::vector<std::vector<std::string>> members;
  std::size_t distinct_members = 0;
};

struct Timelines {
  int window_count = 0;
  std::map<int, CommunityTimeline> communities;

  /// The `m` communities with most distinct members (ties by id).
  std::vector<int> top(std::size_t m) const;
  const CommunityTimeline& at(int community) const;
};

/// mem_k(t_i) for every community. `window_count` of 0 infers it from the
/// largest window index present.
Timelines community_timelines(const DynamicPartition& partition, int window_count = 0);

/// (window, community) pairs of one user's active windows, window order.
using UserPath = std::vector<std::pair<int, int>>;
using UserPaths = std::map<std::string, UserPath>;

UserPaths user_trajectories(const DynamicPartition& partition);
UserPaths user_trajectories(const Timelines& timelines);

}  // namespace coordyn
