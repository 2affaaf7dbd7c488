#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "coordyn/dyncomm.hpp"
#include "coordyn/error.hpp"

namespace coordyn {

std::vector<int> Timelines::top(std::size_t m) const {
  std::vector<int> ids;
  ids.reserve(communities.size());
  for (const auto& [id, tl] : communities) ids.push_back(id);
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    return communities.at(a).distinct_members > communities.at(b).distinct_members;
  });
  if (ids.size() > m) ids.resize(m);
  return ids;
}

const CommunityTimeline& Timelines::at(int community) const {
  auto it = communities.find(community);
  if (it == communities.end()) throw InputError(fmt::format("unknown community {}", community));
  return it->second;
}

Timelines community_timelines(const DynamicPartition& partition, int window_count) {
  int inferred = 0;
  for (const auto& r : partition.rows) {
    if (r.window_index < 0) throw InputError(fmt::format("negative window index for user '{}'", r.user_id));
    inferred = std::max(inferred, r.window_index + 1);
  }
  if (window_count == 0) window_count = inferred;
  if (inferred > window_count) {
    throw InputError(fmt::format("partition references window {} beyond the {} windows", inferred - 1, window_count));
  }

  Timelines out;
  out.window_count = window_count;
  std::map<int, std::set<std::string>> distinct;
  for (const auto& r : partition.rows) {
    auto& tl = out.communities[r.community];
    if (tl.members.empty()) {
      tl.community = r.community;
      tl.members.resize(window_count);
    }
    tl.members[r.window_index].push_back(r.user_id);
    distinct[r.community].insert(r.user_id);
  }
  for (auto& [id, tl] : out.communities) {
    for (auto& m : tl.members) {
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
    }
    tl.distinct_members = distinct[id].size();
  }
  return out;
}

namespace {

void sort_paths(UserPaths& out) {
  for (auto& [user, path] : out) {
    std::sort(path.begin(), path.end());
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (path[i].first == path[i - 1].first) {
        throw InputError(fmt::format("user '{}' has two communities in window {}", user, path[i].first));
      }
    }
  }
}

}  // namespace

UserPaths user_trajectories(const DynamicPartition& partition) {
  UserPaths out;
  for (const auto& r : partition.rows) out[r.user_id].emplace_back(r.window_index, r.community);
  sort_paths(out);
  return out;
}

UserPaths user_trajectories(const Timelines& timelines) {
  UserPaths out;
  for (const auto& [id, tl] : timelines.communities) {
    for (std::size_t w = 0; w < tl.members.size(); ++w) {
      for (const auto& user : tl.members[w]) out[user].emplace_back(static_cast<int>(w), id);
    }
  }
  sort_paths(out);
  return out;
}

}  // namespace coordyn
