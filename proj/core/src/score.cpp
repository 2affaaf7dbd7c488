#include "coordyn/score.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>
#include <unordered_map>

#include "coordyn/analytics/stats.hpp"
#include "coordyn/error.hpp"

namespace coordyn {

namespace {

std::size_t match_shifts(const std::vector<ShiftRecord>& planted, const std::vector<ShiftRecord>& recovered,
                         int tolerance) {
  std::map<std::string, std::vector<int>> planted_by_user;
  std::map<std::string, std::vector<int>> recovered_by_user;
  for (const auto& s : planted) planted_by_user[s.user_id].push_back(s.window);
  for (const auto& s : recovered) recovered_by_user[s.user_id].push_back(s.window);

  std::size_t matched = 0;
  for (const auto& [user, truth] : planted_by_user) {
    auto it = recovered_by_user.find(user);
    if (it == recovered_by_user.end()) continue;
    const auto& found = it->second;
    std::vector<std::tuple<int, std::size_t, std::size_t>> candidates;  // distance, planted, recovered
    for (std::size_t i = 0; i < truth.size(); ++i) {
      for (std::size_t j = 0; j < found.size(); ++j) {
        const int d = std::abs(truth[i] - found[j]);
        if (d <= tolerance) candidates.emplace_back(d, i, j);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<char> used_truth(truth.size(), 0);
    std::vector<char> used_found(found.size(), 0);
    for (const auto& [d, i, j] : candidates) {
      if (used_truth[i] || used_found[j]) continue;
      used_truth[i] = used_found[j] = 1;
      ++matched;
    }
  }
  return matched;
}

}  // namespace

RecoveryScore score_recovery(const GroundTruth& truth, const DynamicPartition& recovered,
                             const std::vector<ShiftRecord>& recovered_shifts,
                             const std::vector<ArchetypeLabel>& recovered_labels, int tolerance) {
  if (truth.memberships.empty() || recovered.rows.empty()) throw InputError("cannot score empty partitions");
  if (tolerance < 0) throw InputError("shift tolerance must be non-negative");

  int windows = 0;
  for (const auto& m : truth.memberships) windows = std::max(windows, m.window_index + 1);
  for (const auto& m : recovered.rows) windows = std::max(windows, m.window_index + 1);

  std::vector<std::unordered_map<std::string, int>> planted(windows);
  for (const auto& m : truth.memberships) planted[m.window_index][m.user_id] = m.community;
  std::vector<std::vector<int>> a(windows);
  std::vector<std::vector<int>> b(windows);
  for (const auto& m : recovered.rows) {
    auto it = planted[m.window_index].find(m.user_id);
    if (it == planted[m.window_index].end()) continue;
    a[m.window_index].push_back(it->second);
    b[m.window_index].push_back(m.community);
  }

  RecoveryScore score;
  double sum = 0.0;
  std::size_t scored = 0;
  for (int w = 0; w < windows; ++w) {
    if (a[w].empty()) {
      score.window_nmi.push_back(-1.0);
      continue;
    }
    score.window_nmi.push_back(normalized_mutual_information(a[w], b[w]));
    sum += score.window_nmi.back();
    ++scored;
  }
  if (scored > 0) score.mean_nmi = sum / static_cast<double>(scored);

  score.planted_shifts = truth.shifts.size();
  score.recovered_shifts = recovered_shifts.size();
  score.matched_shifts = match_shifts(truth.shifts, recovered_shifts, tolerance);
  if (score.recovered_shifts > 0) {
    score.precision = static_cast<double>(score.matched_shifts) / static_cast<double>(score.recovered_shifts);
  }
  if (score.planted_shifts > 0) {
    score.recall = static_cast<double>(score.matched_shifts) / static_cast<double>(score.planted_shifts);
  }
  if (score.planted_shifts == 0 && score.recovered_shifts == 0) {
    score.precision = score.recall = 1.0;
  }
  if (score.precision + score.recall > 0.0) {
    score.f1 = 2.0 * score.precision * score.recall / (score.precision + score.recall);
  }

  for (const auto& l : recovered_labels) {
    auto it = truth.archetypes.find(l.user_id);
    if (it != truth.archetypes.end()) ++score.confusion[it->second][l.label];
  }
  return score;
}

}  // namespace coordyn
