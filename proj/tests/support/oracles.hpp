#pragma once

// Slow, definition-level reference implementations used to check the
// library's fast paths, plus random fixture generators.

#include <cstdint>
#include <cstddef>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coordyn/dyncomm.hpp"
#include "coordyn/multiplex.hpp"
#include "coordyn/simnet.hpp"

namespace oracle {

/// Window starts (in days from the span start) found by stepping one offset
/// at a time while a whole window still fits.
std::vector<int> enumerate_window_starts(int span_days, int duration_days, int offset_days);

/// Edge (u, v) names retained by evaluating (1 - w/s)^(k-1) at each endpoint
/// from strengths and degrees recomputed by scanning the edge list.
std::set<std::pair<std::string, std::string>> backbone_edges(const coordyn::LayerGraph& graph, double alpha);

/// Edge name pairs of a layer.
std::set<std::pair<std::string, std::string>> edge_names(const coordyn::LayerGraph& graph);

/// B_ij = [A_ijs - gamma k_is k_js / 2m_s] delta_sr + C_ij over node-slices
/// in global slice order, and the normaliser 2mu = sum of A and C.
struct ModularityMatrix {
  std::vector<std::vector<double>> b;
  double two_mu = 0.0;
};

ModularityMatrix modularity_matrix(const coordyn::MultiplexNetwork& network, double gamma);
double modularity_double_sum(const ModularityMatrix& matrix, const std::vector<int>& labels);

/// Multislice modularity as the literal double sum over every ordered pair
/// of node-slices. `labels` follows the network's global slice order.
double modularity_double_sum(const coordyn::MultiplexNetwork& network, const std::vector<int>& labels, double gamma);

/// Best modularity over every set partition of the node-slices.
double exhaustive_max_modularity(const coordyn::MultiplexNetwork& network, double gamma);

/// Largest quality gain available by moving one slice into another
/// community (or a new singleton), using the definitional double sum.
double best_single_move_gain(const coordyn::MultiplexNetwork& network, const std::vector<int>& labels, double gamma);

/// Extrapolated rank-biased overlap of two strict rankings, written as the
/// sum over depths of prefix agreement (X_d / d) with the tail of the
/// shorter list extrapolated at its final agreement.
double rbo_sum(const std::vector<std::string>& a, const std::vector<std::string>& b, double p);

/// Random layers over users "u0".."u{users-1}" with edge probability
/// `density` and weights in (0, 1]. Layer w has window index w.
std::vector<coordyn::LayerGraph> random_layers(std::mt19937_64& rng, int layers, int users, double density);

/// Random weighted graph with up to `max_nodes` nodes.
coordyn::LayerGraph random_graph(std::mt19937_64& rng, int max_nodes);

/// Fresh empty directory under the system temp directory, removed on
/// destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace oracle
