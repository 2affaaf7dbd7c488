#pragma once

#include <string>
#include <vector>

#include "coordyn/analytics/hashtags.hpp"

namespace coordyn {

/// Ranked groups of tied items, best first.
using Ranking = std::vector<std::vector<std::string>>;

/// Groups by descending count; ties sorted by name within their group.
Ranking rank_by_count(const HashtagCounts& counts);

/// One item per rank.
Ranking strict_ranking(const std::vector<std::string>& items);

/// Extrapolated rank-biased overlap. A tie group enters the prefix whole at
/// the depth of its first rank; agreement at depth d is the overlap over
/// the mean prefix size. Rankings of different lengths use the
/// extrapolation that assumes the shorter one continues with its final
/// agreement. Empty vs empty is 1, empty vs non-empty is 0.
double rbo(const Ranking& a, const Ranking& b, double persistence = 0.9);

}  // namespace coordyn
