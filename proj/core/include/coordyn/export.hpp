#pragma once

#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "coordyn/analytics/archetypes.hpp"
#include "coordyn/analytics/shifts.hpp"
#include "coordyn/dyncomm.hpp"
#include "coordyn/multiplex.hpp"

namespace coordyn {

/// Opens a file or throws InputError naming it.
std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

/// user_id,window_index,community_id
void write_partition_csv(std::ostream& out, const DynamicPartition& partition);
DynamicPartition read_partition_csv(std::istream& in);

/// user_id,window_index,origin,destination,weight
void write_shifts_csv(std::ostream& out, const std::vector<ShiftRecord>& shifts);
std::vector<ShiftRecord> read_shifts_csv(std::istream& in);

/// user_id,archetype,active_windows,shifts,distinct_communities,
/// max_windows_in_community,final_hold
void write_archetypes_csv(std::ostream& out, const std::vector<ArchetypeLabel>& labels);
std::vector<ArchetypeLabel> read_archetypes_csv(std::istream& in);

/// Layer edge list: source,target,weight. Isolated nodes are not stored.
void write_layer_csv(std::ostream& out, const LayerGraph& layer);
LayerGraph read_layer_csv(std::istream& in, int window_index);

/// Undirected GraphML with a `weight` edge attribute.
void write_graphml(std::ostream& out, const LayerGraph& layer);

/// slice,user_id,window_index in global slice order.
void write_node_slices_csv(std::ostream& out, const MultiplexNetwork& network);
/// user_id,window_index,next_window_index,weight
void write_couplings_csv(std::ostream& out, const MultiplexNetwork& network);

}  // namespace coordyn
