#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coordyn/analytics/archetypes.hpp"
#include "coordyn/analytics/hashtags.hpp"
#include "coordyn/analytics/stats.hpp"
#include "coordyn/ingest.hpp"
#include "coordyn/multiplex.hpp"

namespace coordyn {

struct AffinityRow {
  std::string user_id;
  int own = 0;
  int closest = 0;  // highest RBO, ties to the lower id
  double own_rbo = 0.0;
  double closest_rbo = 0.0;
};

struct AffinityResult {
  std::vector<AffinityRow> rows;
  std::size_t without_hashtags = 0;
  double diagonal_fraction = 0.0;
  /// own -> closest -> users, for heatmaps.
  std::map<int, std::map<int, std::size_t>> matrix;
};

/// Compares each stationary user's full-period hashtag ranking with every
/// community's ranking.
AffinityResult stationary_affinity(const std::vector<ArchetypeLabel>& labels, const UserPaths& paths,
                                   const std::map<std::string, HashtagCounts>& user_tf,
                                   const std::map<int, HashtagCounts>& community_tf, double persistence = 0.9);

/// Per-offset samples of one measure towards origin and destination.
struct AlignedMeasure {
  std::vector<double> origin_mean;  // NaN where no samples
  std::vector<double> destination_mean;
  std::vector<std::size_t> origin_count;
  std::vector<std::size_t> destination_count;
  std::vector<std::optional<KruskalWallis>> test;
};

struct AlignedTrends {
  int half_width = 0;
  std::vector<int> offsets;  // -m..m
  std::size_t users = 0;
  AlignedMeasure rbo;
  AlignedMeasure closeness;
};

struct AlignmentInputs {
  const MultiplexNetwork* network = nullptr;
  const Timelines* timelines = nullptr;
  const UserPaths* paths = nullptr;
  /// [window][user] and [community][window] hashtag TF.
  const std::vector<std::map<std::string, HashtagCounts>>* user_window_tf = nullptr;
  const std::map<int, std::vector<HashtagCounts>>* community_window_tf = nullptr;
};

/// Aligns influenced users on the arrival window of their final shift and
/// averages, per offset in [-m, m], the RBO of the user's window hashtags
/// against origin and destination, and the closeness to each community's
/// members in that window's layer. Missing data drops the user from that
/// offset only.
AlignedTrends aligned_shift_trends(const std::vector<ArchetypeLabel>& labels, const std::vector<ShiftRecord>& shifts,
                                   const AlignmentInputs& inputs, int half_width, double persistence = 0.9);

}  // namespace coordyn
