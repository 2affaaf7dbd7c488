#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coordyn/analytics/shifts.hpp"
#include "coordyn/analytics/stats.hpp"
#include "coordyn/dyncomm.hpp"

namespace coordyn {

enum class Archetype { stationary, influenced, volatile_, other };

std::string_view archetype_name(Archetype a);
Archetype parse_archetype(std::string_view name);

/// Facts the label is derived from.
struct ArchetypeEvidence {
  std::size_t active_windows = 0;
  std::size_t shifts = 0;
  std::size_t distinct_communities = 0;
  std::size_t max_windows_in_community = 0;
  int final_destination = -1;  // -1 without shifts
  /// Active windows from the final arrival on. The final shift is the last
  /// change, so all of them are in the final destination.
  std::size_t final_hold = 0;
};

struct ArchetypeLabel {
  std::string user_id;
  Archetype label = Archetype::other;
  ArchetypeEvidence evidence;
};

struct ArchetypeOptions {
  /// Users active in fewer windows are labelled other.
  std::size_t min_active_windows = 1;
};

/// ceil(N / 3).
std::size_t third_of(int window_count);

ArchetypeEvidence archetype_evidence(const UserPath& path);

/// stationary: no shifts. influenced: final destination held for at least
/// ceil(N/3) windows. volatile: 3+ shifts and under ceil(N/3) windows in
/// every community; checked before influenced.
Archetype label_from_evidence(const ArchetypeEvidence& evidence, int window_count,
                              const ArchetypeOptions& options = {});

/// One label per user, user order.
std::vector<ArchetypeLabel> classify_archetypes(const UserPaths& paths, int window_count,
                                                const ArchetypeOptions& options = {});

std::map<Archetype, std::size_t> archetype_counts(const std::vector<ArchetypeLabel>& labels);

struct GroupTest {
  Archetype a = Archetype::other;
  Archetype b = Archetype::other;
  /// Absent when either group has fewer than two samples.
  std::optional<KruskalWallis> test;
};

/// Shift weights grouped by the shifting user's archetype (volatile,
/// influenced, other) with pairwise Kruskal-Wallis tests.
struct ShiftDistances {
  std::map<Archetype, std::vector<double>> samples;
  std::vector<GroupTest> tests;
};

ShiftDistances shift_distance_distributions(const std::vector<ShiftRecord>& shifts,
                                            const std::vector<ArchetypeLabel>& labels);

}  // namespace coordyn
