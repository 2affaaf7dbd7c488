#pragma once

#include <map>
#include <string>
#include <vector>

#include "coordyn/analytics/hashtags.hpp"
#include "coordyn/ingest.hpp"

namespace coordyn {

struct PolarityOptions {
  double tolerance = 1e-6;
  int max_iterations = 100;
};

struct PolarityMap {
  std::map<std::string, int> seeds;  // -1, 0 or +1
  std::map<std::string, double> hashtag;
  /// Hashtags with no co-occurrence path to a seed; held at 0.
  std::vector<std::string> unreached;
  int iterations = 0;
  bool converged = false;

  /// TF-weighted mean before normalization, and the normalized score.
  std::map<int, double> community_raw;
  std::map<int, double> community;
};

/// Propagates seed leanings over the hashtag co-occurrence graph, where an
/// edge counts the distinct original tweets carrying both tags. Non-seeds
/// take the weighted mean of their neighbours (Jacobi sweeps), seeds stay
/// clamped. Throws InputError without at least one negative and one
/// positive seed, or with a seed outside {-1, 0, 1}.
PolarityMap hashtag_polarity(const std::vector<RetweetEvent>& events, const std::map<std::string, int>& seeds,
                             const PolarityOptions& options = {});

/// Fills community_raw and community. Positive scores are divided by the
/// largest positive one, negative scores by the magnitude of the most
/// negative one.
void assign_community_polarity(PolarityMap& polarity, const std::map<int, HashtagCounts>& community_tf);

}  // namespace coordyn
