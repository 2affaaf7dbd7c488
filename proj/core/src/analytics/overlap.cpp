#include "coordyn/analytics/overlap.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn {

double OverlapMatrix::at(int static_id, int dynamic_id) const {
  auto r = std::find(static_ids.begin(), static_ids.end(), static_id);
  auto c = std::find(dynamic_ids.begin(), dynamic_ids.end(), dynamic_id);
  if (r == static_ids.end() || c == dynamic_ids.end()) {
    throw InputError(fmt::format("no overlap entry for ({}, {})", static_id, dynamic_id));
  }
  return values[r - static_ids.begin()][c - dynamic_ids.begin()];
}

namespace {

OverlapMatrix build(const std::map<std::string, int>& static_partition, const Timelines& dynamic,
                    const std::map<std::string, std::set<int>>& memberships) {
  OverlapMatrix m;
  std::map<int, std::size_t> static_size;
  for (const auto& [user, k] : static_partition) ++static_size[k];
  for (const auto& [k, n] : static_size) m.static_ids.push_back(k);
  for (const auto& [j, tl] : dynamic.communities) m.dynamic_ids.push_back(j);

  std::map<int, std::size_t> col;
  for (std::size_t j = 0; j < m.dynamic_ids.size(); ++j) col[m.dynamic_ids[j]] = j;
  m.values.assign(m.static_ids.size(), std::vector<double>(m.dynamic_ids.size(), 0.0));
  std::size_t row = 0;
  std::map<int, std::size_t> row_of;
  for (int k : m.static_ids) row_of[k] = row++;
  for (const auto& [user, k] : static_partition) {
    auto it = memberships.find(user);
    if (it == memberships.end()) continue;
    for (int j : it->second) m.values[row_of[k]][col.at(j)] += 1.0;
  }
  for (std::size_t r = 0; r < m.static_ids.size(); ++r) {
    const double n = static_cast<double>(static_size[m.static_ids[r]]);
    for (auto& v : m.values[r]) v /= n;
  }
  return m;
}

}  // namespace

OverlapMatrix partition_overlap(const std::map<std::string, int>& static_partition, const Timelines& dynamic) {
  std::map<std::string, std::set<int>> memberships;
  for (const auto& [id, tl] : dynamic.communities) {
    for (const auto& window : tl.members) {
      for (const auto& user : window) memberships[user].insert(id);
    }
  }
  return build(static_partition, dynamic, memberships);
}

OverlapMatrix partition_overlap_dominant(const std::map<std::string, int>& static_partition, const Timelines& dynamic) {
  std::map<std::string, std::map<int, std::size_t>> windows;
  for (const auto& [id, tl] : dynamic.communities) {
    for (const auto& window : tl.members) {
      for (const auto& user : window) ++windows[user][id];
    }
  }
  std::map<std::string, std::set<int>> memberships;
  for (const auto& [user, counts] : windows) {
    int best = counts.begin()->first;
    for (const auto& [id, n] : counts) {
      if (n > counts.at(best)) best = id;
    }
    memberships[user] = {best};
  }
  return build(static_partition, dynamic, memberships);
}

}  // namespace coordyn
