#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "coordyn/analytics/archetypes.hpp"
#include "coordyn/analytics/shifts.hpp"
#include "coordyn/dyncomm.hpp"
#include "coordyn/synth.hpp"

namespace coordyn {

struct RecoveryScore {
  /// NMI per window over users present in both labelings; -1 for windows
  /// with no common user.
  std::vector<double> window_nmi;
  double mean_nmi = 0.0;  // over scored windows
  std::size_t planted_shifts = 0;
  std::size_t recovered_shifts = 0;
  std::size_t matched_shifts = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  /// planted -> recovered -> users, over users labelled in both.
  std::map<Archetype, std::map<Archetype, std::size_t>> confusion;
};

/// A recovered shift matches a planted one of the same user whose arrival
/// window is within `tolerance`; matching is one-to-one, closest first.
RecoveryScore score_recovery(const GroundTruth& truth, const DynamicPartition& recovered,
                             const std::vector<ShiftRecord>& recovered_shifts,
                             const std::vector<ArchetypeLabel>& recovered_labels, int tolerance = 1);

}  // namespace coordyn
