#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace coordyn {

struct KruskalWallis {
  double h = 0.0;
  double p = 1.0;
  std::size_t n = 0;
  int dof = 0;
};

/// Tie-corrected H with a chi-square(groups - 1) p-value. Needs at least two
/// non-empty groups and three samples in total.
KruskalWallis kruskal_wallis(const std::vector<std::vector<double>>& groups);

/// Upper tail P(X >= x) of a chi-square variable.
double chi_square_upper_tail(double x, int dof);

/// Empty for fewer than two points or zero variance in either input.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Midranks (1-based) of the values.
std::vector<double> midranks(std::span<const double> values);

/// I(a;b) / ((H(a) + H(b)) / 2); 1 when both labelings are constant.
double normalized_mutual_information(std::span<const int> a, std::span<const int> b);

}  // namespace coordyn
