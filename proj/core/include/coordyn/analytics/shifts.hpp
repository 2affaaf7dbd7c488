#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coordyn/analytics/hashtags.hpp"
#include "coordyn/dyncomm.hpp"

namespace coordyn {

/// A change of community between two consecutive active windows of a user.
struct ShiftRecord {
  std::string user_id;
  int window = 0;  // arrival window
  int origin = 0;
  int destination = 0;
  double weight = 0.0;  // 1 - sim(origin, destination)

  friend bool operator==(const ShiftRecord&, const ShiftRecord&) = default;
};

/// Shifts ordered by user, then window. Inactive gaps are skipped. Weights
/// are left at zero.
std::vector<ShiftRecord> extract_shifts(const UserPaths& paths);

/// Sets weight = 1 - sim(origin, destination), clamped to [0, 1].
void weight_shifts(std::vector<ShiftRecord>& shifts, const SimilarityMatrix& similarity);

struct FlowEdge {
  int from = 0;
  int to = 0;
  long net_flow = 0;  // shifts from->to minus to->from, always > 0
  double dissimilarity = 0.0;
  double weighted_flow = 0.0;

  friend bool operator==(const FlowEdge&, const FlowEdge&) = default;
};

/// One edge per community pair with positive net flow, sorted by (from, to).
/// Dissimilarity comes from `similarity` when given, else from the shift
/// weights.
std::vector<FlowEdge> net_flow_network(const std::vector<ShiftRecord>& shifts,
                                       const SimilarityMatrix* similarity = nullptr);

struct PolarityShiftStats {
  std::vector<double> deltas;  // p(destination) - p(origin), shift order
  double mean = 0.0;
  double total = 0.0;
};

/// Throws InputError when a shift endpoint has no polarity.
PolarityShiftStats polarity_shift_stats(const std::vector<ShiftRecord>& shifts,
                                        const std::map<int, double>& community_polarity);

struct MembershipShiftStats {
  std::size_t users = 0;
  /// (distinct communities, shifts) -> users
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> joint;
  std::map<std::size_t, std::size_t> membership_histogram;
  std::map<std::size_t, std::size_t> shift_histogram;
  double single_membership_fraction = 0.0;
  /// Absent with fewer than two users or a constant marginal.
  std::optional<double> pearson;
};

MembershipShiftStats membership_shift_stats(const UserPaths& paths, const std::vector<ShiftRecord>& shifts);

}  // namespace coordyn
