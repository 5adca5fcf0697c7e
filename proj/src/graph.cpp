#include "estranet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace estranet {

GlobalNodeId NodeUniverse::intern(std::string_view token) {
  auto it = index_.find(std::string(token));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<GlobalNodeId>(names_.size());
  names_.emplace_back(token);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<GlobalNodeId> NodeUniverse::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

// Self-loops never arrive as edges: input graphs are simple and contraction
// passes its diagonal separately.
void check_edge(std::size_t n, const WeightedEdge& e) {
  if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
  if (e.u == e.v) throw std::invalid_argument("self-loops are not allowed");
  if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
    throw std::invalid_argument("edge weights must be positive and finite");
  }
}

}  // namespace

SnapshotGraph SnapshotGraph::from_edges(int t, std::size_t n_nodes, std::span<const WeightedEdge> edges,
                                        std::vector<GlobalNodeId> node_ids) {
  if (!node_ids.empty() && node_ids.size() != n_nodes) {
    throw std::invalid_argument("node_ids must match the node count");
  }
  SnapshotGraph g;
  g.t_ = t;
  g.adjacency_.assign(n_nodes, {});
  g.self_loop_.assign(n_nodes, 0.0);
  g.node_ids_ = std::move(node_ids);
  for (const auto& e : edges) {
    check_edge(n_nodes, e);
    g.adjacency_[e.u].push_back({e.v, e.weight});
    g.adjacency_[e.v].push_back({e.u, e.weight});
  }
  g.finalize();
  return g;
}

SnapshotGraph SnapshotGraph::from_contraction(int t, std::size_t n_nodes, std::span<const WeightedEdge> edges,
                                              std::vector<double> self_loops) {
  if (self_loops.size() != n_nodes) throw std::invalid_argument("self_loops must match the node count");
  for (double w : self_loops) {
    if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument("self-loop weights must be nonnegative");
  }
  SnapshotGraph g;
  g.t_ = t;
  g.adjacency_.assign(n_nodes, {});
  g.self_loop_ = std::move(self_loops);
  for (const auto& e : edges) {
    check_edge(n_nodes, e);
    g.adjacency_[e.u].push_back({e.v, e.weight});
    g.adjacency_[e.v].push_back({e.u, e.weight});
  }
  g.finalize();
  return g;
}

void SnapshotGraph::finalize() {
  const std::size_t n = adjacency_.size();
  if (self_loop_.empty()) self_loop_.assign(n, 0.0);
  strength_.assign(n, 0.0);
  edge_count_ = 0;
  double off_diagonal = 0.0;
  double diagonal = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    auto& row = adjacency_[u];
    std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    // merge duplicate pairs by summing their weights
    std::size_t out = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (out > 0 && row[out - 1].node == row[i].node) {
        row[out - 1].weight += row[i].weight;
      } else {
        row[out++] = row[i];
      }
    }
    row.resize(out);
    double k = self_loop_[u];
    for (const auto& nb : row) k += nb.weight;
    strength_[u] = k;
    for (const auto& nb : row) {
      if (nb.node > u) {
        off_diagonal += nb.weight;
        ++edge_count_;
      }
    }
    diagonal += self_loop_[u];
  }
  total_weight_ = off_diagonal + 0.5 * diagonal;
  if (!node_ids_.empty()) {
    id_index_.reserve(node_ids_.size());
    for (std::size_t u = 0; u < node_ids_.size(); ++u) {
      if (!id_index_.emplace(node_ids_[u], static_cast<NodeIndex>(u)).second) {
        throw std::invalid_argument("duplicate node id in snapshot");
      }
    }
  }
}

double SnapshotGraph::weight_between(NodeIndex u, NodeIndex v) const {
  const auto& row = adjacency_[u];
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor& nb, NodeIndex x) { return nb.node < x; });
  if (it != row.end() && it->node == v) return it->weight;
  return 0.0;
}

std::optional<NodeIndex> SnapshotGraph::index_of(GlobalNodeId id) const {
  auto it = id_index_.find(id);
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

Partition Partition::singletons(std::size_t n) {
  Partition p;
  p.labels.resize(n);
  for (std::size_t u = 0; u < n; ++u) p.labels[u] = static_cast<Label>(u);
  return p;
}

CompactLabels compact_labels(const Partition& p) {
  CompactLabels out;
  out.community_of.resize(p.size());
  std::unordered_map<Label, NodeIndex> seen;
  seen.reserve(p.size());
  for (std::size_t u = 0; u < p.size(); ++u) {
    auto [it, inserted] = seen.emplace(p.labels[u], static_cast<NodeIndex>(out.count));
    if (inserted) ++out.count;
    out.community_of[u] = it->second;
  }
  return out;
}

Partition compacted(const Partition& p) {
  auto cl = compact_labels(p);
  Partition out;
  out.labels.resize(p.size());
  for (std::size_t u = 0; u < p.size(); ++u) out.labels[u] = static_cast<Label>(cl.community_of[u]);
  return out;
}

std::vector<std::vector<NodeIndex>> communities_of(const Partition& p) {
  auto cl = compact_labels(p);
  std::vector<std::vector<NodeIndex>> comms(cl.count);
  for (std::size_t u = 0; u < p.size(); ++u) comms[cl.community_of[u]].push_back(static_cast<NodeIndex>(u));
  return comms;
}

bool same_communities(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) return false;
  return compacted(a) == compacted(b);
}

std::size_t NodeHierarchyMap::finer_node_count() const {
  std::size_t n = 0;
  for (const auto& group : members) n += group.size();
  return n;
}

NodeHierarchyMap compose(const NodeHierarchyMap& coarse, const NodeHierarchyMap& fine) {
  NodeHierarchyMap out;
  out.members.resize(coarse.members.size());
  for (std::size_t s = 0; s < coarse.members.size(); ++s) {
    for (NodeIndex mid : coarse.members[s]) {
      const auto& base = fine.members.at(mid);
      out.members[s].insert(out.members[s].end(), base.begin(), base.end());
    }
    std::sort(out.members[s].begin(), out.members[s].end());
  }
  return out;
}

Partition project_partition(const Partition& coarse, const NodeHierarchyMap& map) {
  if (coarse.size() != map.members.size()) {
    throw std::invalid_argument("partition size does not match hierarchy level");
  }
  Partition out;
  out.labels.resize(map.finer_node_count());
  for (std::size_t s = 0; s < map.members.size(); ++s) {
    for (NodeIndex u : map.members[s]) out.labels.at(u) = coarse.labels[s];
  }
  return out;
}

InducedGraph induce_graph(const SnapshotGraph& g, const Partition& p) {
  if (p.size() != g.node_count()) throw std::invalid_argument("partition does not cover the graph");
  const auto cl = compact_labels(p);
  const std::size_t c = cl.count;

  NodeHierarchyMap hierarchy;
  hierarchy.members.resize(c);
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    hierarchy.members[cl.community_of[u]].push_back(static_cast<NodeIndex>(u));
  }

  // intra weight per community (self-loops of g count A_uu / 2)
  std::vector<double> intra(c, 0.0);
  std::unordered_map<std::uint64_t, double> inter;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    const NodeIndex cu = cl.community_of[u];
    intra[cu] += 0.5 * g.self_loop(u);
    for (const auto& nb : g.neighbors(u)) {
      if (nb.node <= u) continue;
      const NodeIndex cv = cl.community_of[nb.node];
      if (cu == cv) {
        intra[cu] += nb.weight;
      } else {
        const auto lo = std::min(cu, cv);
        const auto hi = std::max(cu, cv);
        inter[(static_cast<std::uint64_t>(lo) << 32) | hi] += nb.weight;
      }
    }
  }

  std::vector<std::uint64_t> keys;
  keys.reserve(inter.size());
  for (const auto& [key, _] : inter) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  std::vector<WeightedEdge> edges;
  edges.reserve(keys.size());
  for (auto key : keys) {
    edges.push_back({static_cast<NodeIndex>(key >> 32), static_cast<NodeIndex>(key & 0xffffffffu), inter[key]});
  }
  std::vector<double> self_loops(c);
  for (std::size_t i = 0; i < c; ++i) self_loops[i] = 2.0 * intra[i];

  InducedGraph out;
  out.graph = SnapshotGraph::from_contraction(g.t(), c, edges, std::move(self_loops));
  out.hierarchy = std::move(hierarchy);
  return out;
}

}  // namespace estranet
