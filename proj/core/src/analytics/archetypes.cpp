#include "coordyn/analytics/archetypes.hpp"

#include <algorithm>
#include <array>
#include <set>

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn {

std::string_view archetype_name(Archetype a) {
  switch (a) {
    case Archetype::stationary:
      return "stationary";
    case Archetype::influenced:
      return "influenced";
    case Archetype::volatile_:
      return "volatile";
    case Archetype::other:
      return "other";
  }
  return "other";
}

Archetype parse_archetype(std::string_view name) {
  for (auto a : {Archetype::stationary, Archetype::influenced, Archetype::volatile_, Archetype::other}) {
    if (archetype_name(a) == name) return a;
  }
  throw InputError(fmt::format("unknown archetype '{}'", name));
}

std::size_t third_of(int window_count) {
  if (window_count < 1) throw InputError("window count must be positive");
  return (static_cast<std::size_t>(window_count) + 2) / 3;
}

ArchetypeEvidence archetype_evidence(const UserPath& path) {
  ArchetypeEvidence ev;
  ev.active_windows = path.size();
  std::map<int, std::size_t> per_community;
  std::size_t arrival = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    ++per_community[path[i].second];
    if (i > 0 && path[i].second != path[i - 1].second) {
      ++ev.shifts;
      arrival = i;
    }
  }
  ev.distinct_communities = per_community.size();
  for (const auto& [c, n] : per_community) ev.max_windows_in_community = std::max(ev.max_windows_in_community, n);
  if (ev.shifts > 0) {
    ev.final_destination = path.back().second;
    ev.final_hold = path.size() - arrival;
  }
  return ev;
}

Archetype label_from_evidence(const ArchetypeEvidence& evidence, int window_count, const ArchetypeOptions& options) {
  const auto third = third_of(window_count);
  if (evidence.active_windows == 0 || evidence.active_windows < options.min_active_windows) return Archetype::other;
  if (evidence.shifts == 0) return Archetype::stationary;
  if (evidence.shifts >= 3 && evidence.max_windows_in_community < third) return Archetype::volatile_;
  if (evidence.final_hold >= third) return Archetype::influenced;
  return Archetype::other;
}

std::vector<ArchetypeLabel> classify_archetypes(const UserPaths& paths, int window_count,
                                                const ArchetypeOptions& options) {
  std::vector<ArchetypeLabel> out;
  out.reserve(paths.size());
  for (const auto& [user, path] : paths) {
    ArchetypeLabel label;
    label.user_id = user;
    label.evidence = archetype_evidence(path);
    label.label = label_from_evidence(label.evidence, window_count, options);
    out.push_back(std::move(label));
  }
  return out;
}

std::map<Archetype, std::size_t> archetype_counts(const std::vector<ArchetypeLabel>& labels) {
  std::map<Archetype, std::size_t> out{
      {Archetype::stationary, 0}, {Archetype::influenced, 0}, {Archetype::volatile_, 0}, {Archetype::other, 0}};
  for (const auto& l : labels) ++out[l.label];
  return out;
}

ShiftDistances shift_distance_distributions(const std::vector<ShiftRecord>& shifts,
                                            const std::vector<ArchetypeLabel>& labels) {
  std::map<std::string, Archetype> by_user;
  for (const auto& l : labels) by_user.emplace(l.user_id, l.label);

  constexpr std::array groups{Archetype::volatile_, Archetype::influenced, Archetype::other};
  ShiftDistances out;
  for (auto g : groups) out.samples[g];
  for (const auto& s : shifts) {
    auto it = by_user.find(s.user_id);
    if (it == by_user.end() || it->second == Archetype::stationary) continue;
    out.samples[it->second].push_back(s.weight);
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      GroupTest t{groups[i], groups[j], std::nullopt};
      const auto& a = out.samples[groups[i]];
      const auto& b = out.samples[groups[j]];
      if (a.size() >= 2 && b.size() >= 2) t.test = kruskal_wallis({a, b});
      out.tests.push_back(t);
    }
  }
  return out;
}

}  // namespace coordyn
