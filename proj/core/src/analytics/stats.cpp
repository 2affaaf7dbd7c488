#include "coordyn/analytics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "coordyn/error.hpp"

namespace coordyn {

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double chi_square_upper_tail(double x, int dof) {
  if (dof < 1) throw InputError("chi-square needs at least one degree of freedom");
  if (!(x > 0.0)) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, x));
}

KruskalWallis kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw InputError("Kruskal-Wallis needs at least two groups");
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) throw InputError("Kruskal-Wallis group is empty");
    for (double x : g) {
      if (!std::isfinite(x)) throw InputError("Kruskal-Wallis sample is not finite");
      pooled.push_back(x);
    }
  }
  const auto n = pooled.size();
  if (n < 3) throw InputError("Kruskal-Wallis needs at least three samples");

  KruskalWallis out;
  out.n = n;
  out.dof = static_cast<int>(groups.size()) - 1;
  const auto ranks = midranks(pooled);

  std::map<double, std::size_t> ties;
  for (double x : pooled) ++ties[x];
  double tie_sum = 0.0;
  for (const auto& [x, t] : ties) {
    const double tt = static_cast<double>(t);
    tie_sum += tt * tt * tt - tt;
  }
  const double nn = static_cast<double>(n);
  const double correction = 1.0 - tie_sum / (nn * nn * nn - nn);
  if (correction <= 0.0) return out;  // all values equal

  double sum = 0.0;
  std::size_t pos = 0;
  for (const auto& g : groups) {
    double r = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) r += ranks[pos++];
    sum += r * r / static_cast<double>(g.size());
  }
  out.h = (12.0 / (nn * (nn + 1.0)) * sum - 3.0 * (nn + 1.0)) / correction;
  out.h = std::max(out.h, 0.0);
  out.p = chi_square_upper_tail(out.h, out.dof);
  return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("pearson inputs differ in length");
  if (x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double normalized_mutual_information(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw InputError("labelings differ in length");
  if (a.empty()) throw InputError("labelings are empty");
  const double n = static_cast<double>(a.size());
  std::map<int, double> ca;
  std::map<int, double> cb;
  std::map<std::pair<int, int>, double> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca[a[i]] += 1.0;
    cb[b[i]] += 1.0;
    joint[{a[i], b[i]}] += 1.0;
  }
  auto entropy = [&](const std::map<int, double>& c) {
    double h = 0.0;
    for (const auto& [k, v] : c) h -= v / n * std::log(v / n);
    return h;
  };
  const double ha = entropy(ca);
  const double hb = entropy(cb);
  if (ha == 0.0 && hb == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& [key, v] : joint) mi += v / n * std::log(v * n / (ca[key.first] * cb[key.second]));
  return std::clamp(mi / ((ha + hb) / 2.0), 0.0, 1.0);
}

}  // namespace coordyn
