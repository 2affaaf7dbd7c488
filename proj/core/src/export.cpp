#include "coordyn/export.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include <fmt/format.h>

#include "coordyn/csv.hpp"
#include "coordyn/error.hpp"

namespace coordyn {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open '{}' for reading", path));
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(fmt::format("cannot open '{}' for writing", path));
  return out;
}

namespace {

template <class T>
T parse_number(const std::string& text, const csv::Reader& reader, std::string_view column) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InputError(fmt::format("line {}: bad {} '{}'", reader.line_number(), column, text));
  }
  return value;
}

}  // namespace

void write_partition_csv(std::ostream& out, const DynamicPartition& partition) {
  csv::Writer w(out);
  w.row({"user_id", "window_index", "community_id"});
  for (const auto& r : partition.rows) {
    w.row({r.user_id, std::to_string(r.window_index), std::to_string(r.community)});
  }
}

DynamicPartition read_partition_csv(std::istream& in) {
  csv::Reader reader(in);
  const auto user = reader.column("user_id");
  const auto window = reader.column("window_index");
  const auto community = reader.column("community_id");
  DynamicPartition p;
  std::vector<std::string> f;
  int max_community = -1;
  while (reader.next(f)) {
    Membership m{f.at(user), parse_number<int>(f.at(window), reader, "window_index"),
                 parse_number<int>(f.at(community), reader, "community_id")};
    if (m.window_index < 0 || m.community < 0) {
      throw InputError(fmt::format("line {}: negative index", reader.line_number()));
    }
    max_community = std::max(max_community, m.community);
    p.rows.push_back(std::move(m));
  }
  p.community_count = max_community + 1;
  return p;
}

void write_shifts_csv(std::ostream& out, const std::vector<ShiftRecord>& shifts) {
  csv::Writer w(out);
  w.row({"user_id", "window_index", "origin", "destination", "weight"});
  for (const auto& s : shifts) {
    w.row({s.user_id, std::to_string(s.window), std::to_string(s.origin), std::to_string(s.destination),
           csv::number(s.weight)});
  }
}

std::vector<ShiftRecord> read_shifts_csv(std::istream& in) {
  csv::Reader reader(in);
  const auto user = reader.column("user_id");
  const auto window = reader.column("window_index");
  const auto origin = reader.column("origin");
  const auto destination = reader.column("destination");
  const bool weighted = reader.has_column("weight");
  const auto weight = weighted ? reader.column("weight") : 0;
  std::vector<ShiftRecord> out;
  std::vector<std::string> f;
  while (reader.next(f)) {
    out.push_back({f.at(user), parse_number<int>(f.at(window), reader, "window_index"),
                   parse_number<int>(f.at(origin), reader, "origin"),
                   parse_number<int>(f.at(destination), reader, "destination"),
                   weighted ? parse_number<double>(f.at(weight), reader, "weight") : 0.0});
  }
  return out;
}

void write_archetypes_csv(std::ostream& out, const std::vector<ArchetypeLabel>& labels) {
  csv::Writer w(out);
  w.row({"user_id", "archetype", "active_windows", "shifts", "distinct_communities", "max_windows_in_community",
         "final_hold"});
  for (const auto& l : labels) {
    const auto& e = l.evidence;
    w.row({l.user_id, std::string(archetype_name(l.label)), std::to_string(e.active_windows),
           std::to_string(e.shifts), std::to_string(e.distinct_communities),
           std::to_string(e.max_windows_in_community), std::to_string(e.final_hold)});
  }
}

std::vector<ArchetypeLabel> read_archetypes_csv(std::istream& in) {
  csv::Reader reader(in);
  const auto user = reader.column("user_id");
  const auto label = reader.column("archetype");
  std::vector<ArchetypeLabel> out;
  std::vector<std::string> f;
  auto optional_count = [&](std::string_view column) -> std::size_t {
    if (!reader.has_column(column)) return 0;
    return parse_number<std::size_t>(f.at(reader.column(column)), reader, column);
  };
  while (reader.next(f)) {
    ArchetypeLabel l;
    l.user_id = f.at(user);
    l.label = parse_archetype(f.at(label));
    l.evidence.active_windows = optional_count("active_windows");
    l.evidence.shifts = optional_count("shifts");
    l.evidence.distinct_communities = optional_count("distinct_communities");
    l.evidence.max_windows_in_community = optional_count("max_windows_in_community");
    l.evidence.final_hold = optional_count("final_hold");
    out.push_back(std::move(l));
  }
  return out;
}

void write_layer_csv(std::ostream& out, const LayerGraph& layer) {
  csv::Writer w(out);
  w.row({"source", "target", "weight"});
  for (const auto& e : layer.edges) w.row({layer.nodes[e.u], layer.nodes[e.v], csv::number(e.weight)});
}

LayerGraph read_layer_csv(std::istream& in, int window_index) {
  csv::Reader reader(in);
  const auto source = reader.column("source");
  const auto target = reader.column("target");
  const auto weight = reader.column("weight");
  std::vector<std::tuple<std::string, std::string, double>> edges;
  std::vector<std::string> nodes;
  std::vector<std::string> f;
  while (reader.next(f)) {
    edges.emplace_back(f.at(source), f.at(target), parse_number<double>(f.at(weight), reader, "weight"));
    nodes.push_back(f.at(source));
    nodes.push_back(f.at(target));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return make_layer(window_index, std::move(nodes), edges);
}

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

void write_graphml(std::ostream& out, const LayerGraph& layer) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      << "  <graph id=\"window_" << layer.window_index << "\" edgedefault=\"undirected\">\n";
  for (const auto& n : layer.nodes) out << "    <node id=\"" << xml_escape(n) << "\"/>\n";
  for (const auto& e : layer.edges) {
    out << "    <edge source=\"" << xml_escape(layer.nodes[e.u]) << "\" target=\"" << xml_escape(layer.nodes[e.v])
        << "\"><data key=\"weight\">" << csv::number(e.weight) << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_node_slices_csv(std::ostream& out, const MultiplexNetwork& network) {
  csv::Writer w(out);
  w.row({"slice", "user_id", "window_index"});
  std::size_t slice = 0;
  for (const auto& layer : network.layers) {
    for (const auto& user : layer.nodes) w.row({std::to_string(slice++), user, std::to_string(layer.window_index)});
  }
}

void write_couplings_csv(std::ostream& out, const MultiplexNetwork& network) {
  csv::Writer w(out);
  w.row({"user_id", "window_index", "next_window_index", "weight"});
  for (const auto& c : network.couplings) {
    const auto& layer = network.layers[c.layer];
    w.row({layer.nodes[c.node], std::to_string(layer.window_index),
           std::to_string(network.layers[c.layer + 1].window_index), csv::number(network.omega)});
  }
}

}  // namespace coordyn
