#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "coordyn/dyncomm.hpp"
#include "coordyn/error.hpp"
#include "coordyn/export.hpp"
#include "oracles.hpp"

namespace coordyn {
namespace {

// Cliques of `size` users per block, bridged by one weak edge, repeated in
// `windows` layers.
MultiplexNetwork planted_blocks(int blocks, int size, int windows, double omega) {
  std::vector<std::string> users;
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (int b = 0; b < blocks; ++b) {
    for (int i = 0; i < size; ++i) users.push_back("b" + std::to_string(b) + "u" + std::to_string(i));
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) {
        edges.emplace_back(users[static_cast<std::size_t>(b * size + i)], users[static_cast<std::size_t>(b * size + j)], 1.0);
      }
    }
    if (b > 0) edges.emplace_back(users[static_cast<std::size_t>(b * size)], users[static_cast<std::size_t>(b * size - 1)], 0.1);
  }
  std::vector<LayerGraph> layers;
  for (int w = 0; w < windows; ++w) layers.push_back(make_layer(w, users, edges));
  return assemble_multiplex(std::move(layers), omega);
}

TEST(Leiden, RecoversPlantedBlocksAcrossWindows) {
  const auto net = planted_blocks(4, 6, 3, 1.0);
  const auto p = leiden_partition(net, {});
  EXPECT_EQ(p.community_count, 4);
  std::map<std::string, std::set<int>> communities_of;
  std::map<int, std::set<char>> blocks_in;
  for (const auto& r : p.rows) {
    communities_of[r.user_id].insert(r.community);
    blocks_in[r.community].insert(r.user_id[1]);
  }
  for (const auto& [user, cs] : communities_of) EXPECT_EQ(cs.size(), 1u) << user;
  for (const auto& [c, bs] : blocks_in) EXPECT_EQ(bs.size(), 1u) << c;
  EXPECT_NEAR(p.quality, multislice_modularity(net, p, 1.0), 1e-12);
}

TEST(Leiden, RowsFollowSliceOrderAndLabelsAreCompact) {
  const auto net = planted_blocks(3, 4, 2, 0.5);
  const auto p = leiden_partition(net, {});
  ASSERT_EQ(p.rows.size(), net.slice_count());
  std::size_t i = 0;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    for (const auto& user : net.layers[l].nodes) {
      EXPECT_EQ(p.rows[i].user_id, user);
      EXPECT_EQ(p.rows[i].window_index, net.layers[l].window_index);
      ++i;
    }
  }
  std::set<int> labels;
  for (const auto& r : p.rows) labels.insert(r.community);
  EXPECT_EQ(labels, (std::set<int>{0, 1, 2}));
}

TEST(Leiden, ReachesExhaustiveOptimumOnTinyNetworks) {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 60) {
    auto layers = oracle::random_layers(rng, 2, 4, 0.6);
    if (layers[0].node_count() == 0 || layers[1].node_count() == 0) continue;
    const auto net = assemble_multiplex(std::move(layers), 0.8);
    if (net.slice_count() > 8) continue;
    ResolutionConfig config;
    config.gamma = 1.2;
    const auto p = leiden_partition(net, config);
    EXPECT_NEAR(p.quality, oracle::exhaustive_max_modularity(net, 1.2), 1e-9);
    ++checked;
  }
}

TEST(Leiden, NoSingleMoveImprovesResult) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 8; ++i) {
    auto layers = oracle::random_layers(rng, 3, 40, 0.08);
    const auto net = assemble_multiplex(std::move(layers), 0.5);
    ResolutionConfig config;
    config.seed = static_cast<std::uint64_t>(i);
    const auto p = leiden_partition(net, config);
    EXPECT_LE(oracle::best_single_move_gain(net, p.labels(), config.gamma), 1e-9);
    for (std::size_t k = 1; k < p.pass_quality.size(); ++k) EXPECT_GE(p.pass_quality[k], p.pass_quality[k - 1] - 1e-12);
  }
}

TEST(Leiden, SameSeedSameOutput) {
  std::mt19937_64 rng(29);
  const auto net = assemble_multiplex(oracle::random_layers(rng, 4, 60, 0.06), 1.0);
  std::ostringstream a;
  std::ostringstream b;
  write_partition_csv(a, leiden_partition(net, {}));
  write_partition_csv(b, leiden_partition(net, {}));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Leiden, LowResolutionMergesBridgedBlocks) {
  const auto net = planted_blocks(4, 6, 2, 1.0);
  ResolutionConfig coarse;
  coarse.gamma = 0.001;  // null-model penalty falls below the bridge weight
  EXPECT_EQ(leiden_partition(net, coarse).community_count, 1);
  EXPECT_EQ(leiden_partition(net, {}).community_count, 4);
}

TEST(Leiden, RejectsBadConfig) {
  const auto net = planted_blocks(2, 3, 1, 1.0);
  ResolutionConfig config;
  config.gamma = 0.0;
  EXPECT_THROW(leiden_partition(net, config), InputError);
  config.gamma = 1.0;
  config.max_passes = 0;
  EXPECT_THROW(leiden_partition(net, config), InputError);
}

TEST(Compaction, OrdersByDistinctUsersThenSlices) {
  DynamicPartition p;
  p.rows = {{"a", 0, 7}, {"a", 1, 7}, {"b", 0, 3}, {"c", 0, 3}, {"d", 0, 9}};
  compact_partition(p);
  EXPECT_EQ(p.community_count, 3);
  EXPECT_EQ(p.rows[2].community, 0);  // community 3 has two users
  EXPECT_EQ(p.rows[0].community, 1);  // community 7: one user, two slices
  EXPECT_EQ(p.rows[4].community, 2);
}

}  // namespace
}  // namespace coordyn
