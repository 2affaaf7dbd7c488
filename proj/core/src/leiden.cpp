#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "coordyn/dyncomm.hpp"
#include "coordyn/error.hpp"
#include "random.hpp"

namespace coordyn {
namespace {

using Node = std::uint32_t;

// Node-slices and their couplings seen as one weighted graph. Each node keeps
// its strength per layer so the multislice null model (which only pairs
// slices of the same layer) survives aggregation.
struct SupraGraph {
  std::size_t n = 0;
  std::size_t layer_count = 0;
  std::vector<std::size_t> adj_offsets;
  std::vector<Node> adj_nodes;
  std::vector<double> adj_weights;
  std::vector<double> self_weight;  // internal weight of aggregated nodes, each edge once
  std::vector<std::size_t> k_offsets;
  std::vector<std::uint32_t> k_layers;
  std::vector<double> k_values;
  std::vector<double> inv_layer_total;  // 1 / 2m_s, zero for edgeless layers
  double total = 0.0;                   // 2 mu
};

SupraGraph build_supra_graph(const MultiplexNetwork& net) {
  SupraGraph g;
  const auto offsets = net.slice_offsets();
  g.n = offsets.back();
  g.layer_count = net.layers.size();
  g.self_weight.assign(g.n, 0.0);
  g.inv_layer_total.assign(g.layer_count, 0.0);

  std::vector<std::size_t> degree(g.n, 0);
  for (std::size_t s = 0; s < net.layers.size(); ++s) {
    for (const auto& e : net.layers[s].edges) {
      ++degree[offsets[s] + e.u];
      ++degree[offsets[s] + e.v];
    }
  }
  const bool coupled = net.omega > 0.0;
  if (coupled) {
    for (const auto& c : net.couplings) {
      ++degree[offsets[c.layer] + c.node];
      ++degree[offsets[c.layer + 1] + c.next_node];
    }
  }
  g.adj_offsets.assign(g.n + 1, 0);
  for (std::size_t v = 0; v < g.n; ++v) g.adj_offsets[v + 1] = g.adj_offsets[v] + degree[v];
  g.adj_nodes.resize(g.adj_offsets.back());
  g.adj_weights.resize(g.adj_offsets.back());
  std::vector<std::size_t> fill(g.adj_offsets.begin(), g.adj_offsets.end() - 1);
  auto link = [&](std::size_t a, std::size_t b, double w) {
    g.adj_nodes[fill[a]] = static_cast<Node>(b);
    g.adj_weights[fill[a]++] = w;
    g.adj_nodes[fill[b]] = static_cast<Node>(a);
    g.adj_weights[fill[b]++] = w;
  };

  g.k_offsets.resize(g.n + 1);
  g.k_layers.resize(g.n);
  g.k_values.assign(g.n, 0.0);
  for (std::size_t s = 0; s < net.layers.size(); ++s) {
    double two_m = 0.0;
    for (const auto& e : net.layers[s].edges) {
      link(offsets[s] + e.u, offsets[s] + e.v, e.weight);
      g.k_values[offsets[s] + e.u] += e.weight;
      g.k_values[offsets[s] + e.v] += e.weight;
      two_m += 2.0 * e.weight;
    }
    for (std::size_t v = offsets[s]; v < offsets[s + 1]; ++v) g.k_layers[v] = static_cast<std::uint32_t>(s);
    g.total += two_m;
    if (two_m > 0.0) g.inv_layer_total[s] = 1.0 / two_m;
  }
  for (std::size_t v = 0; v <= g.n; ++v) g.k_offsets[v] = v;
  if (coupled) {
    for (const auto& c : net.couplings) {
      link(offsets[c.layer] + c.node, offsets[c.layer + 1] + c.next_node, net.omega);
      g.total += 2.0 * net.omega;
    }
  }
  return g;
}

using detail::Rng;

// Renumbers labels to 0..C-1 in order of first appearance.
std::size_t compact_labels(std::vector<Node>& labels) {
  std::vector<Node> remap(labels.size(), UINT32_MAX);
  Node next = 0;
  for (auto& l : labels) {
    if (remap[l] == UINT32_MAX) remap[l] = next++;
    l = remap[l];
  }
  return next;
}

double quality(const SupraGraph& g, const std::vector<Node>& labels, double gamma) {
  if (g.total <= 0.0) return 0.0;
  double inside = 0.0;
  std::size_t communities = 0;
  for (Node l : labels) communities = std::max<std::size_t>(communities, l + 1);
  std::vector<double> kc(communities * g.layer_count, 0.0);
  for (std::size_t v = 0; v < g.n; ++v) {
    inside += 2.0 * g.self_weight[v];
    for (std::size_t e = g.adj_offsets[v]; e < g.adj_offsets[v + 1]; ++e) {
      if (labels[g.adj_nodes[e]] == labels[v]) inside += g.adj_weights[e];
    }
    for (std::size_t e = g.k_offsets[v]; e < g.k_offsets[v + 1]; ++e) {
      kc[labels[v] * g.layer_count + g.k_layers[e]] += g.k_values[e];
    }
  }
  double null_term = 0.0;
  for (std::size_t c = 0; c < communities; ++c) {
    for (std::size_t s = 0; s < g.layer_count; ++s) {
      const double x = kc[c * g.layer_count + s];
      null_term += x * x * g.inv_layer_total[s];
    }
  }
  return (inside - gamma * null_term) / g.total;
}

// Community bookkeeping for one level: per-community strength per layer.
struct PartitionState {
  const SupraGraph& g;
  std::vector<Node> label;
  std::vector<double> strength;  // community x layer
  std::vector<std::size_t> size;

  PartitionState(const SupraGraph& graph, std::vector<Node> labels)
      : g(graph), label(std::move(labels)), strength(graph.n * graph.layer_count, 0.0), size(graph.n, 0) {
    for (std::size_t v = 0; v < g.n; ++v) add(static_cast<Node>(v), label[v]);
  }

  void add(Node v, Node c) {
    label[v] = c;
    ++size[c];
    for (std::size_t e = g.k_offsets[v]; e < g.k_offsets[v + 1]; ++e) {
      strength[c * g.layer_count + g.k_layers[e]] += g.k_values[e];
    }
  }

  void remove(Node v) {
    const Node c = label[v];
    --size[c];
    for (std::size_t e = g.k_offsets[v]; e < g.k_offsets[v + 1]; ++e) {
      strength[c * g.layer_count + g.k_layers[e]] -= g.k_values[e];
    }
  }

  // sum_s K_vs * K_cs / 2m_s, with v outside c.
  double null_overlap(Node v, Node c) const {
    double acc = 0.0;
    for (std::size_t e = g.k_offsets[v]; e < g.k_offsets[v + 1]; ++e) {
      const auto s = g.k_layers[e];
      acc += g.k_values[e] * strength[c * g.layer_count + s] * g.inv_layer_total[s];
    }
    return acc;
  }
};

// Accumulates edge weight from one node towards each neighbouring community.
class NeighbourWeights {
 public:
  explicit NeighbourWeights(std::size_t n) : weight_(n, 0.0), seen_(n, 0) {}

  template <class LabelOf>
  void collect(const SupraGraph& g, Node v, LabelOf&& label_of) {
    for (std::size_t e = g.adj_offsets[v]; e < g.adj_offsets[v + 1]; ++e) {
      const Node u = g.adj_nodes[e];
      if (u == v) continue;
      const Node c = label_of(u);
      if (!seen_[c]) {
        seen_[c] = 1;
        list_.push_back(c);
      }
      weight_[c] += g.adj_weights[e];
    }
  }

  template <class LabelOf>
  void collect_within(const SupraGraph& g, Node v, const std::vector<Node>& parent, LabelOf&& label_of) {
    for (std::size_t e = g.adj_offsets[v]; e < g.adj_offsets[v + 1]; ++e) {
      const Node u = g.adj_nodes[e];
      if (u == v || parent[u] != parent[v]) continue;
      const Node c = label_of(u);
      if (!seen_[c]) {
        seen_[c] = 1;
        list_.push_back(c);
      }
      weight_[c] += g.adj_weights[e];
    }
  }

  const std::vector<Node>& communities() const { return list_; }
  double weight(Node c) const { return weight_[c]; }

  void clear() {
    for (Node c : list_) {
      weight_[c] = 0.0;
      seen_[c] = 0;
    }
    list_.clear();
  }

 private:
  std::vector<double> weight_;
  std::vector<char> seen_;
  std::vector<Node> list_;
};

// Queue-based local moving. Returns true if any node changed community.
// With `parent` set, nodes only see neighbours sharing their parent label,
// which confines moves to each parent community's induced subgraph.
bool move_nodes(PartitionState& p, Rng& rng, double gamma, double eps, const std::vector<Node>* parent = nullptr) {
  const SupraGraph& g = p.g;
  std::deque<Node> queue;
  std::vector<char> queued(g.n, 1);
  for (Node v : rng.permutation<Node>(g.n)) queue.push_back(v);

  std::vector<Node> empty;
  for (std::size_t c = g.n; c-- > 0;) {
    if (p.size[c] == 0) empty.push_back(static_cast<Node>(c));
  }

  NeighbourWeights nw(g.n);
  bool changed = false;
  while (!queue.empty()) {
    const Node v = queue.front();
    queue.pop_front();
    queued[v] = 0;

    const Node current = p.label[v];
    p.remove(v);
    if (parent) {
      nw.collect_within(g, v, *parent, [&](Node u) { return p.label[u]; });
    } else {
      nw.collect(g, v, [&](Node u) { return p.label[u]; });
    }

    Node best = current;
    double best_gain = nw.weight(current) - gamma * p.null_overlap(v, current);
    for (Node c : nw.communities()) {
      if (c == current) continue;
      const double gain = nw.weight(c) - gamma * p.null_overlap(v, c);
      if (gain > best_gain + eps) {
        best = c;
        best_gain = gain;
      }
    }
    // Moving to a fresh community scores zero.
    if (p.size[current] > 0 && 0.0 > best_gain + eps && !empty.empty()) {
      best = empty.back();
      empty.pop_back();
    }
    nw.clear();

    p.add(v, best);
    if (best != current) {
      changed = true;
      if (p.size[current] == 0) empty.push_back(current);
      for (std::size_t e = g.adj_offsets[v]; e < g.adj_offsets[v + 1]; ++e) {
        const Node u = g.adj_nodes[e];
        if (!queued[u] && p.label[u] != best && (!parent || (*parent)[u] == (*parent)[v])) {
          queued[u] = 1;
          queue.push_back(u);
        }
      }
    }
  }
  return changed;
}

// Splitting a community into its connected components never lowers
// modularity, so this keeps quality monotone.
std::size_t split_disconnected(const SupraGraph& g, std::vector<Node>& labels) {
  std::vector<Node> out(g.n, UINT32_MAX);
  Node next = 0;
  std::vector<Node> stack;
  for (Node start = 0; start < g.n; ++start) {
    if (out[start] != UINT32_MAX) continue;
    out[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const Node v = stack.back();
      stack.pop_back();
      for (std::size_t e = g.adj_offsets[v]; e < g.adj_offsets[v + 1]; ++e) {
        const Node u = g.adj_nodes[e];
        if (out[u] == UINT32_MAX && labels[u] == labels[v] && g.adj_weights[e] > 0.0) {
          out[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  labels = std::move(out);
  return next;
}

// Refinement: local moving from singletons inside each community's induced
// subgraph, then a split into connected components. Refined communities are
// connected subsets of one parent, so aggregate-level moves can carve
// communities apart.
std::vector<Node> refine(const SupraGraph& g, const std::vector<Node>& parent, Rng& rng, double gamma, double eps) {
  std::vector<Node> singletons(g.n);
  std::iota(singletons.begin(), singletons.end(), Node{0});
  PartitionState sub(g, std::move(singletons));
  move_nodes(sub, rng, gamma, eps, &parent);
  std::vector<Node> refined = std::move(sub.label);
  split_disconnected(g, refined);
  return refined;
}

SupraGraph aggregate(const SupraGraph& g, const std::vector<Node>& groups, std::size_t group_count) {
  SupraGraph out;
  out.n = group_count;
  out.layer_count = g.layer_count;
  out.inv_layer_total = g.inv_layer_total;
  out.total = g.total;
  out.self_weight.assign(group_count, 0.0);

  std::vector<std::vector<Node>> members(group_count);
  for (Node v = 0; v < g.n; ++v) members[groups[v]].push_back(v);

  std::vector<double> acc(group_count, 0.0);
  std::vector<char> seen(group_count, 0);
  std::vector<Node> touched;
  std::vector<double> layer_acc(g.layer_count, 0.0);
  std::vector<char> layer_seen(g.layer_count, 0);
  std::vector<std::uint32_t> layer_touched;

  out.adj_offsets.push_back(0);
  out.k_offsets.push_back(0);
  for (Node c = 0; c < group_count; ++c) {
    touched.clear();
    layer_touched.clear();
    for (Node v : members[c]) {
      out.self_weight[c] += g.self_weight[v];
      for (std::size_t e = g.adj_offsets[v]; e < g.adj_offsets[v + 1]; ++e) {
        const Node d = groups[g.adj_nodes[e]];
        if (d == c) {
          out.self_weight[c] += 0.5 * g.adj_weights[e];  // seen from both ends
          continue;
        }
        if (!seen[d]) {
          seen[d] = 1;
          touched.push_back(d);
        }
        acc[d] += g.adj_weights[e];
      }
      for (std::size_t e = g.k_offsets[v]; e < g.k_offsets[v + 1]; ++e) {
        const auto s = g.k_layers[e];
        if (!layer_seen[s]) {
          layer_seen[s] = 1;
          layer_touched.push_back(s);
        }
        layer_acc[s] += g.k_values[e];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (Node d : touched) {
      out.adj_nodes.push_back(d);
      out.adj_weights.push_back(acc[d]);
      acc[d] = 0.0;
      seen[d] = 0;
    }
    out.adj_offsets.push_back(out.adj_nodes.size());
    std::sort(layer_touched.begin(), layer_touched.end());
    for (auto s : layer_touched) {
      out.k_layers.push_back(s);
      out.k_values.push_back(layer_acc[s]);
      layer_acc[s] = 0.0;
      layer_seen[s] = 0;
    }
    out.k_offsets.push_back(out.k_layers.size());
  }
  return out;
}

// One Leiden iteration starting from `labels` on the base graph.
std::vector<Node> leiden_iteration(const SupraGraph& base, std::vector<Node> labels, Rng& rng, double gamma,
                                   double eps) {
  std::vector<Node> node_of(base.n);
  std::iota(node_of.begin(), node_of.end(), Node{0});
  SupraGraph owned;
  const SupraGraph* g = &base;
  std::vector<Node> level_labels = std::move(labels);

  while (true) {
    PartitionState state(*g, std::move(level_labels));
    move_nodes(state, rng, gamma, eps);
    std::vector<Node> moved = state.label;
    const std::size_t communities = compact_labels(moved);
    if (communities == g->n) {
      level_labels = std::move(moved);
      break;
    }
    std::vector<Node> refined = refine(*g, moved, rng, gamma, eps);
    std::size_t refined_count = compact_labels(refined);
    if (refined_count == g->n) {
      // Refinement merged nothing; aggregate on the moved partition so the
      // level still shrinks.
      refined = moved;
      refined_count = communities;
    }
    std::vector<Node> next_labels(refined_count);
    for (Node v = 0; v < g->n; ++v) next_labels[refined[v]] = moved[v];
    for (auto& x : node_of) x = refined[x];
    owned = aggregate(*g, refined, refined_count);
    g = &owned;
    level_labels = std::move(next_labels);
  }

  std::vector<Node> out(base.n);
  for (Node v = 0; v < base.n; ++v) out[v] = level_labels[node_of[v]];
  compact_labels(out);
  return out;
}

// Walks all set partitions as restricted growth strings. Cost is the Bell
// number of g.n, so callers keep g.n small.
std::vector<Node> best_partition(const SupraGraph& g, double gamma) {
  std::vector<Node> labels(g.n, 0);
  std::vector<Node> best = labels;
  double best_q = quality(g, labels, gamma);
  // ceiling[i] = 1 + max(labels[0..i)), the largest label slot i may take
  std::vector<Node> ceiling(g.n, 1);
  if (g.n > 0) ceiling[0] = 0;
  while (true) {
    std::size_t i = g.n;
    while (i > 0 && labels[i - 1] == ceiling[i - 1]) --i;
    if (i == 0) break;
    ++labels[i - 1];
    for (std::size_t j = i; j < g.n; ++j) {
      labels[j] = 0;
      ceiling[j] = std::max(ceiling[j - 1], labels[j - 1] + 1);
    }
    const double q = quality(g, labels, gamma);
    if (q > best_q) {
      best_q = q;
      best = labels;
    }
  }
  return best;
}

}  // namespace

DynamicPartition leiden_partition(const MultiplexNetwork& network, const ResolutionConfig& config) {
  if (!(config.gamma > 0.0)) throw InputError("gamma must be positive");
  if (config.max_passes < 1) throw InputError("max_passes must be at least 1");
  const std::size_t n = network.slice_count();
  if (n == 0) throw InputError("cannot partition an empty network");

  const SupraGraph g = build_supra_graph(network);
  const double eps = 1e-13 * std::max(1.0, g.total);
  Rng rng(config.seed);

  std::vector<Node> labels(n);
  std::iota(labels.begin(), labels.end(), Node{0});
  double q = quality(g, labels, config.gamma);

  DynamicPartition result;
  for (int pass = 0; pass < config.max_passes; ++pass) {
    labels = leiden_iteration(g, std::move(labels), rng, config.gamma, eps);
    split_disconnected(g, labels);
    const double next_q = quality(g, labels, config.gamma);
    result.pass_quality.push_back(next_q);
    const double gain = next_q - q;
    q = next_q;
    if (gain < config.tolerance) break;
  }
  if (config.exact_limit > 0 && n <= static_cast<std::size_t>(config.exact_limit)) {
    std::vector<Node> exact = best_partition(g, config.gamma);
    split_disconnected(g, exact);
    const double exact_q = quality(g, exact, config.gamma);
    if (exact_q > q + 1e-13) {
      labels = std::move(exact);
      result.pass_quality.push_back(exact_q);
    }
  }

  result.rows.reserve(n);
  std::size_t v = 0;
  for (const auto& layer : network.layers) {
    for (const auto& user : layer.nodes) {
      result.rows.push_back({user, layer.window_index, static_cast<int>(labels[v++])});
    }
  }
  compact_partition(result);
  result.quality = multislice_modularity(network, result.labels(), config.gamma);
  return result;
}

void compact_partition(DynamicPartition& partition) {
  struct Stats {
    std::unordered_set<std::string> users;
    std::size_t slices = 0;
    std::size_t first = 0;
  };
  std::unordered_map<int, Stats> stats;
  for (std::size_t i = 0; i < partition.rows.size(); ++i) {
    const auto& r = partition.rows[i];
    auto [it, fresh] = stats.try_emplace(r.community);
    if (fresh) it->second.first = i;
    it->second.users.insert(r.user_id);
    ++it->second.slices;
  }
  std::vector<int> order;
  order.reserve(stats.size());
  for (const auto& [c, s] : stats) order.push_back(c);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& x = stats.at(a);
    const auto& y = stats.at(b);
    if (x.users.size() != y.users.size()) return x.users.size() > y.users.size();
    if (x.slices != y.slices) return x.slices > y.slices;
    return x.first < y.first;
  });
  std::unordered_map<int, int> relabel;
  for (std::size_t i = 0; i < order.size(); ++i) relabel[order[i]] = static_cast<int>(i);
  for (auto& r : partition.rows) r.community = relabel.at(r.community);
  partition.community_count = static_cast<int>(order.size());
}

}  // namespace coordyn
