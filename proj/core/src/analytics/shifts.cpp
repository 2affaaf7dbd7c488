#include "coordyn/analytics/shifts.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "coordyn/analytics/stats.hpp"
#include "coordyn/error.hpp"

namespace coordyn {

std::vector<ShiftRecord> extract_shifts(const UserPaths& paths) {
  std::vector<ShiftRecord> out;
  for (const auto& [user, path] : paths) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (path[i].second != path[i - 1].second) {
        out.push_back({user, path[i].first, path[i - 1].second, path[i].second, 0.0});
      }
    }
  }
  return out;
}

void weight_shifts(std::vector<ShiftRecord>& shifts, const SimilarityMatrix& similarity) {
  for (auto& s : shifts) s.weight = std::clamp(1.0 - similarity.at(s.origin, s.destination), 0.0, 1.0);
}

std::vector<FlowEdge> net_flow_network(const std::vector<ShiftRecord>& shifts, const SimilarityMatrix* similarity) {
  std::map<std::pair<int, int>, long> counts;
  std::map<std::pair<int, int>, double> weights;
  for (const auto& s : shifts) {
    ++counts[{s.origin, s.destination}];
    weights[{s.origin, s.destination}] = s.weight;
  }
  std::vector<FlowEdge> out;
  for (const auto& [pair, forward] : counts) {
    const auto [from, to] = pair;
    auto back = counts.find({to, from});
    const long net = forward - (back == counts.end() ? 0 : back->second);
    if (net <= 0) continue;
    const double w = similarity ? std::clamp(1.0 - similarity->at(from, to), 0.0, 1.0) : weights[pair];
    out.push_back({from, to, net, w, w * static_cast<double>(net)});
  }
  return out;
}

PolarityShiftStats polarity_shift_stats(const std::vector<ShiftRecord>& shifts,
                                        const std::map<int, double>& community_polarity) {
  auto polarity = [&](int c) {
    auto it = community_polarity.find(c);
    if (it == community_polarity.end()) throw InputError(fmt::format("community {} has no polarity", c));
    return it->second;
  };
  PolarityShiftStats out;
  out.deltas.reserve(shifts.size());
  for (const auto& s : shifts) {
    out.deltas.push_back(polarity(s.destination) - polarity(s.origin));
    out.total += out.deltas.back();
  }
  if (!shifts.empty()) out.mean = out.total / static_cast<double>(shifts.size());
  return out;
}

MembershipShiftStats membership_shift_stats(const UserPaths& paths, const std::vector<ShiftRecord>& shifts) {
  std::map<std::string, std::size_t> shift_count;
  for (const auto& s : shifts) ++shift_count[s.user_id];

  MembershipShiftStats out;
  std::vector<double> memberships;
  std::vector<double> moves;
  std::size_t single = 0;
  for (const auto& [user, path] : paths) {
    std::set<int> distinct;
    for (const auto& [w, c] : path) distinct.insert(c);
    auto it = shift_count.find(user);
    const std::size_t k = it == shift_count.end() ? 0 : it->second;
    ++out.joint[{distinct.size(), k}];
    ++out.membership_histogram[distinct.size()];
    ++out.shift_histogram[k];
    if (distinct.size() == 1) ++single;
    memberships.push_back(static_cast<double>(distinct.size()));
    moves.push_back(static_cast<double>(k));
  }
  out.users = paths.size();
  if (out.users > 0) out.single_membership_fraction = static_cast<double>(single) / static_cast<double>(out.users);
  out.pearson = pearson(memberships, moves);
  return out;
}

}  // namespace coordyn
