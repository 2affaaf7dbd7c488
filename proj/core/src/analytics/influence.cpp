#include "coordyn/analytics/influence.hpp"

#include <cmath>
#include <limits>

#include "coordyn/analytics/closeness.hpp"
#include "coordyn/analytics/rbo.hpp"
#include "coordyn/error.hpp"

namespace coordyn {

AffinityResult stationary_affinity(const std::vector<ArchetypeLabel>& labels, const UserPaths& paths,
                                   const std::map<std::string, HashtagCounts>& user_tf,
                                   const std::map<int, HashtagCounts>& community_tf, double persistence) {
  std::map<int, Ranking> community_rankings;
  for (const auto& [id, tf] : community_tf) community_rankings.emplace(id, rank_by_count(tf));

  AffinityResult out;
  std::size_t diagonal = 0;
  for (const auto& label : labels) {
    if (label.label != Archetype::stationary) continue;
    auto tf = user_tf.find(label.user_id);
    auto path = paths.find(label.user_id);
    if (path == paths.end() || path->second.empty()) continue;
    if (tf == user_tf.end() || tf->second.empty()) {
      ++out.without_hashtags;
      continue;
    }
    const Ranking mine = rank_by_count(tf->second);
    AffinityRow row{label.user_id, path->second.front().second, -1, 0.0, -1.0};
    for (const auto& [id, ranking] : community_rankings) {
      const double r = rbo(mine, ranking, persistence);
      if (id == row.own) row.own_rbo = r;
      if (r > row.closest_rbo) {
        row.closest_rbo = r;
        row.closest = id;
      }
    }
    if (row.closest < 0) continue;
    if (row.closest == row.own) ++diagonal;
    ++out.matrix[row.own][row.closest];
    out.rows.push_back(std::move(row));
  }
  if (!out.rows.empty()) out.diagonal_fraction = static_cast<double>(diagonal) / static_cast<double>(out.rows.size());
  return out;
}

namespace {

struct OffsetSamples {
  std::vector<std::vector<double>> origin;
  std::vector<std::vector<double>> destination;

  explicit OffsetSamples(std::size_t offsets) : origin(offsets), destination(offsets) {}

  AlignedMeasure summarize() const {
    AlignedMeasure m;
    const auto nan = std::numeric_limits<double>::quiet_NaN();
    auto mean = [&](const std::vector<double>& xs) {
      if (xs.empty()) return nan;
      double s = 0.0;
      for (double x : xs) s += x;
      return s / static_cast<double>(xs.size());
    };
    for (std::size_t i = 0; i < origin.size(); ++i) {
      m.origin_mean.push_back(mean(origin[i]));
      m.destination_mean.push_back(mean(destination[i]));
      m.origin_count.push_back(origin[i].size());
      m.destination_count.push_back(destination[i].size());
      if (!origin[i].empty() && !destination[i].empty() && origin[i].size() + destination[i].size() >= 3) {
        m.test.push_back(kruskal_wallis({origin[i], destination[i]}));
      } else {
        m.test.push_back(std::nullopt);
      }
    }
    return m;
  }
};

}  // namespace

AlignedTrends aligned_shift_trends(const std::vector<ArchetypeLabel>& labels, const std::vector<ShiftRecord>& shifts,
                                   const AlignmentInputs& inputs, int half_width, double persistence) {
  if (half_width < 1) throw InputError("alignment half-width must be at least 1");
  if (!inputs.network || !inputs.timelines || !inputs.user_window_tf || !inputs.community_window_tf) {
    throw InputError("alignment inputs are incomplete");
  }
  const auto& timelines = *inputs.timelines;
  const int windows = timelines.window_count;

  std::map<int, const LayerGraph*> layer_of;
  for (const auto& layer : inputs.network->layers) layer_of[layer.window_index] = &layer;

  std::map<std::string, const ShiftRecord*> final_shift;
  for (const auto& s : shifts) {
    auto& slot = final_shift[s.user_id];
    if (!slot || slot->window < s.window) slot = &s;
  }

  AlignedTrends out;
  out.half_width = half_width;
  for (int o = -half_width; o <= half_width; ++o) out.offsets.push_back(o);
  OffsetSamples rbo_samples(out.offsets.size());
  OffsetSamples closeness_samples(out.offsets.size());

  auto community_tf = [&](int community, int w) -> const HashtagCounts* {
    auto it = inputs.community_window_tf->find(community);
    if (it == inputs.community_window_tf->end() || w >= static_cast<int>(it->second.size())) return nullptr;
    return it->second[w].empty() ? nullptr : &it->second[w];
  };
  auto members = [&](int community, int w) -> const std::vector<std::string>* {
    auto it = timelines.communities.find(community);
    if (it == timelines.communities.end()) return nullptr;
    return &it->second.members[w];
  };

  for (const auto& label : labels) {
    if (label.label != Archetype::influenced) continue;
    auto fs = final_shift.find(label.user_id);
    if (fs == final_shift.end()) continue;
    const ShiftRecord& shift = *fs->second;
    ++out.users;
    const int ends[2] = {shift.origin, shift.destination};

    for (std::size_t i = 0; i < out.offsets.size(); ++i) {
      const int w = shift.window + out.offsets[i];
      if (w < 0 || w >= windows) continue;

      if (w < static_cast<int>(inputs.user_window_tf->size())) {
        const auto& per_user = (*inputs.user_window_tf)[w];
        auto tf = per_user.find(label.user_id);
        if (tf != per_user.end() && !tf->second.empty()) {
          const Ranking mine = rank_by_count(tf->second);
          for (int side = 0; side < 2; ++side) {
            const HashtagCounts* theirs = community_tf(ends[side], w);
            if (!theirs) continue;
            const double r = rbo(mine, rank_by_count(*theirs), persistence);
            (side == 0 ? rbo_samples.origin : rbo_samples.destination)[i].push_back(r);
          }
        }
      }

      auto layer = layer_of.find(w);
      if (layer == layer_of.end() || !layer->second->find(label.user_id)) continue;
      for (int side = 0; side < 2; ++side) {
        const auto* targets = members(ends[side], w);
        if (!targets) continue;
        const bool only_self = targets->empty() || (targets->size() == 1 && targets->front() == label.user_id);
        if (only_self) continue;
        const double c = closeness_to_community(*layer->second, label.user_id, *targets);
        (side == 0 ? closeness_samples.origin : closeness_samples.destination)[i].push_back(c);
      }
    }
  }
  out.rbo = rbo_samples.summarize();
  out.closeness = closeness_samples.summarize();
  return out;
}

}  // namespace coordyn
