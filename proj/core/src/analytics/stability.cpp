#include "coordyn/analytics/stability.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn {

namespace {

using Members = std::vector<std::string>;  // sorted

std::size_t intersection_size(const Members& a, const Members& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace

StabilitySeries stability_series(const CommunityTimeline& timeline, const StabilityOptions& options) {
  const auto windows = timeline.members.size();
  StabilitySeries s;
  s.community = timeline.community;
  s.size.assign(windows, 0);
  s.relative_size.assign(windows, 0.0);
  s.jaccard.assign(windows, 0.0);
  s.influx.assign(windows, 0);
  s.outflux.assign(windows, 0);

  auto first = std::find_if(timeline.members.begin(), timeline.members.end(), [](const Members& m) { return !m.empty(); });
  if (first == timeline.members.end()) {
    throw InputError(fmt::format("community {} has no members in any window", timeline.community));
  }
  const auto anchor = static_cast<std::size_t>(first - timeline.members.begin());
  if (anchor != 0 && options.require_anchor_at_start) {
    throw InputError(fmt::format("community {} is empty in the first window", timeline.community));
  }
  s.anchor_window = static_cast<int>(anchor);

  const Members& base = timeline.members[anchor];
  std::set<std::string> joined;
  std::set<std::string> left;
  for (std::size_t i = 0; i < windows; ++i) s.size[i] = timeline.members[i].size();
  for (std::size_t i = anchor; i < windows; ++i) {
    const Members& now = timeline.members[i];
    s.relative_size[i] = static_cast<double>(now.size()) / static_cast<double>(base.size());
    const auto common = intersection_size(base, now);
    s.jaccard[i] = static_cast<double>(common) / static_cast<double>(base.size() + now.size() - common);
    if (i > anchor) {
      const Members& before = timeline.members[i - 1];
      std::set_difference(now.begin(), now.end(), before.begin(), before.end(), std::inserter(joined, joined.end()));
      std::set_difference(before.begin(), before.end(), now.begin(), now.end(), std::inserter(left, left.end()));
    }
    s.influx[i] = joined.size();
    s.outflux[i] = left.size();
  }
  return s;
}

std::vector<StabilitySeries> stability_metrics(const Timelines& timelines, const StabilityOptions& options) {
  std::vector<StabilitySeries> out;
  out.reserve(timelines.communities.size());
  for (const auto& [id, tl] : timelines.communities) out.push_back(stability_series(tl, options));
  return out;
}

}  // namespace coordyn
