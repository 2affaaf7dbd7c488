#include <sstream>

#include <gtest/gtest.h>

#include "coordyn/error.hpp"
#include "coordyn/export.hpp"

namespace coordyn {
namespace {

TEST(Export, PartitionRoundTrip) {
  DynamicPartition p;
  p.rows = {{"a", 0, 1}, {"b,quoted", 0, 0}, {"a", 2, 0}};
  std::stringstream buffer;
  write_partition_csv(buffer, p);
  EXPECT_EQ(buffer.str().substr(0, buffer.str().find('\n')), "user_id,window_index,community_id");
  const auto back = read_partition_csv(buffer);
  EXPECT_EQ(back.rows, p.rows);
  EXPECT_EQ(back.community_count, 2);
}

TEST(Export, PartitionRejectsMalformedRows) {
  std::istringstream bad("user_id,window_index,community_id\na,zero,1\n");
  EXPECT_THROW(read_partition_csv(bad), InputError);
  std::istringstream missing("user,window\n");
  EXPECT_THROW(read_partition_csv(missing), InputError);
}

TEST(Export, ShiftsRoundTrip) {
  const std::vector<ShiftRecord> shifts{{"a", 3, 0, 2, 0.125}, {"b", 1, 2, 1, 1.0 / 3.0}};
  std::stringstream buffer;
  write_shifts_csv(buffer, shifts);
  EXPECT_EQ(read_shifts_csv(buffer), shifts);
}

TEST(Export, ArchetypesRoundTrip) {
  ArchetypeLabel label{"u", Archetype::influenced, {7, 2, 3, 4, 2, 4}};
  std::stringstream buffer;
  write_archetypes_csv(buffer, {label});
  const auto back = read_archetypes_csv(buffer);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].label, Archetype::influenced);
  EXPECT_EQ(back[0].evidence.active_windows, 7u);
  EXPECT_EQ(back[0].evidence.final_hold, 4u);
}

TEST(Export, LayerRoundTripDropsIsolatedNodes) {
  const auto layer = make_layer(4, {"a", "b", "c", "lonely"}, {{"a", "b", 0.1}, {"b", "c", 0.7000000000000001}});
  std::stringstream buffer;
  write_layer_csv(buffer, layer);
  const auto back = read_layer_csv(buffer, 4);
  EXPECT_EQ(back.nodes, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(back.edges, layer.edges);
  EXPECT_EQ(back.window_index, 4);
}

TEST(Export, GraphmlHasWeightedEdges) {
  std::ostringstream out;
  write_graphml(out, make_layer(0, {"a&b", "c"}, {{"a&b", "c", 0.5}}));
  const auto xml = out.str();
  EXPECT_NE(xml.find("<graphml"), std::string::npos);
  EXPECT_NE(xml.find("edgedefault=\"undirected\""), std::string::npos);
  EXPECT_NE(xml.find("a&amp;b"), std::string::npos);
  EXPECT_NE(xml.find(">0.5<"), std::string::npos);
}

TEST(Export, SlicesAndCouplings) {
  const auto net = assemble_multiplex(
      {make_layer(0, {"a", "b"}, {{"a", "b", 1.0}}), make_layer(1, {"b", "c"}, {{"b", "c", 1.0}})}, 0.5);
  std::ostringstream slices;
  write_node_slices_csv(slices, net);
  EXPECT_EQ(slices.str(), "slice,user_id,window_index\n0,a,0\n1,b,0\n2,b,1\n3,c,1\n");
  std::ostringstream couplings;
  write_couplings_csv(couplings, net);
  EXPECT_EQ(couplings.str(), "user_id,window_index,next_window_index,weight\nb,0,1,0.5\n");
}

TEST(Export, OpenErrorsNameThePath) {
  try {
    open_input("/nonexistent/file.csv");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/file.csv"), std::string::npos);
  }
}

}  // namespace
}  // namespace coordyn
