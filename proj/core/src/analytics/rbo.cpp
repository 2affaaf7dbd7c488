#include "coordyn/analytics/rbo.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn {

Ranking rank_by_count(const HashtagCounts& counts) {
  std::vector<std::pair<double, std::string>> items;
  items.reserve(counts.size());
  for (const auto& [tag, c] : counts) {
    if (c > 0.0) items.emplace_back(c, tag);
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  Ranking out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i == 0 || items[i].first != items[i - 1].first) out.emplace_back();
    out.back().push_back(items[i].second);
  }
  return out;
}

Ranking strict_ranking(const std::vector<std::string>& items) {
  Ranking out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back({item});
  return out;
}

namespace {

// Prefix of a ranking that grows one depth at a time; a tie group is added
// whole when the depth reaches its first rank.
class Prefix {
 public:
  Prefix(const Ranking& ranking) : ranking_(ranking) {
    for (const auto& g : ranking) total_ += g.size();
  }

  std::size_t total() const { return total_; }
  std::size_t size() const { return size_; }

  template <class OnItem>
  void advance_to(std::size_t depth, OnItem&& on_item) {
    while (next_ < ranking_.size() && size_ < depth) {
      for (const auto& item : ranking_[next_]) on_item(item);
      size_ += ranking_[next_].size();
      ++next_;
    }
  }

 private:
  const Ranking& ranking_;
  std::size_t total_ = 0;
  std::size_t size_ = 0;
  std::size_t next_ = 0;
};

}  // namespace

double rbo(const Ranking& a, const Ranking& b, double persistence) {
  if (!(persistence > 0.0 && persistence < 1.0)) {
    throw InputError(fmt::format("RBO persistence must lie in (0, 1), got {}", persistence));
  }
  Prefix pa(a);
  Prefix pb(b);
  if (pa.total() == 0 || pb.total() == 0) return pa.total() == pb.total() ? 1.0 : 0.0;

  const bool a_short = pa.total() <= pb.total();
  const std::size_t s = std::min(pa.total(), pb.total());
  const std::size_t l = std::max(pa.total(), pb.total());

  // bit 1: seen in a's prefix, bit 2: seen in b's prefix
  std::unordered_map<std::string, int> seen;
  std::size_t overlap = 0;
  auto mark = [&](const std::string& item, int bit) {
    int& flags = seen[item];
    if (flags & bit) throw InputError(fmt::format("item '{}' appears twice in one ranking", item));
    flags |= bit;
    if (flags == 3) ++overlap;
  };

  double sum = 0.0;
  double weight = 1.0;  // p^d
  double agreement_at_s = 0.0;
  double agreement = 0.0;
  for (std::size_t d = 1; d <= l; ++d) {
    pa.advance_to(d, [&](const std::string& x) { mark(x, 1); });
    pb.advance_to(d, [&](const std::string& x) { mark(x, 2); });
    weight *= persistence;
    const double x = static_cast<double>(overlap);
    if (d <= s) {
      agreement = x / ((static_cast<double>(pa.size()) + static_cast<double>(pb.size())) / 2.0);
      if (d == s) agreement_at_s = agreement;
    } else {
      // The shorter ranking is assumed to keep agreeing at its final rate.
      const double long_size = static_cast<double>(a_short ? pb.size() : pa.size());
      const double dd = static_cast<double>(d);
      agreement = (x + (dd - static_cast<double>(s)) * agreement_at_s) / ((dd + long_size) / 2.0);
    }
    sum += agreement * weight;
  }
  const double value = (1.0 - persistence) / persistence * sum + agreement * weight;
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace coordyn
