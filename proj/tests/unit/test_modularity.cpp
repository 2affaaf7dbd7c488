#include <random>

#include <gtest/gtest.h>

#include "coordyn/dyncomm.hpp"
#include "coordyn/error.hpp"
#include "oracles.hpp"

namespace coordyn {
namespace {

MultiplexNetwork two_triangles(double omega) {
  const std::vector<std::tuple<std::string, std::string, double>> edges{
      {"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}, {"d", "e", 1}, {"e", "f", 1}, {"d", "f", 1}, {"c", "d", 1}};
  const std::vector<std::string> users{"a", "b", "c", "d", "e", "f"};
  return assemble_multiplex({make_layer(0, users, edges), make_layer(1, users, edges)}, omega);
}

TEST(Modularity, SingleLayerTextbookValue) {
  const auto net = assemble_multiplex({two_triangles(0).layers[0]}, 0.0);
  // two triangles joined by one edge: Q = 2 * (6/14 - (7/14)^2)
  const std::vector<int> labels{0, 0, 0, 1, 1, 1};
  EXPECT_NEAR(multislice_modularity(net, labels, 1.0), 2.0 * (6.0 / 14.0 - 0.25), 1e-12);
}

TEST(Modularity, CouplingRewardsConsistentLabels) {
  const auto net = two_triangles(1.0);
  const std::vector<int> consistent{0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 1};
  const std::vector<int> swapped{0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0};
  EXPECT_GT(multislice_modularity(net, consistent, 1.0), multislice_modularity(net, swapped, 1.0));
  EXPECT_NEAR(multislice_modularity(net, consistent, 1.0), oracle::modularity_double_sum(net, consistent, 1.0), 1e-12);
}

TEST(Modularity, MatchesDoubleSumOnRandomNetworks) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> label(0, 2);
  for (int i = 0; i < 40; ++i) {
    auto layers = oracle::random_layers(rng, 3, 8, 0.4);
    bool empty = false;
    for (const auto& l : layers) empty = empty || l.node_count() == 0;
    if (empty) continue;
    const auto net = assemble_multiplex(std::move(layers), 0.7);
    std::vector<int> labels(net.slice_count());
    for (auto& l : labels) l = label(rng);
    EXPECT_NEAR(multislice_modularity(net, labels, 1.3), oracle::modularity_double_sum(net, labels, 1.3), 1e-12);
  }
}

TEST(Modularity, EdgelessLayerHasNoNullTerm) {
  const auto net = assemble_multiplex({make_layer(0, {"a", "b"}, {}), make_layer(1, {"a", "b"}, {{"a", "b", 1.0}})}, 1.0);
  const std::vector<int> labels{0, 0, 0, 0};
  EXPECT_NEAR(multislice_modularity(net, labels, 1.0), oracle::modularity_double_sum(net, labels, 1.0), 1e-12);
}

TEST(Modularity, PartitionOverloadAndCoverage) {
  const auto net = two_triangles(1.0);
  DynamicPartition p;
  const std::vector<int> labels{0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 1};
  for (int w = 0; w < 2; ++w) {
    for (std::size_t u = 0; u < 6; ++u) {
      p.rows.push_back({net.layers[static_cast<std::size_t>(w)].nodes[u], w, labels[static_cast<std::size_t>(w) * 6 + u]});
    }
  }
  EXPECT_DOUBLE_EQ(multislice_modularity(net, p, 1.0), multislice_modularity(net, labels, 1.0));
  p.rows.pop_back();
  EXPECT_THROW(multislice_modularity(net, p, 1.0), InputError);
  EXPECT_THROW(multislice_modularity(net, std::vector<int>{0, 1}, 1.0), InputError);
}

}  // namespace
}  // namespace coordyn
