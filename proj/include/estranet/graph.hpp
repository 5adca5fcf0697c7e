#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace estranet {

using NodeIndex = std::uint32_t;     // snapshot-local index, contiguous from 0
using GlobalNodeId = std::uint32_t;  // run-global node identity
using Label = std::int64_t;          // community label

struct Neighbor {
  NodeIndex node;
  double weight;
};

struct WeightedEdge {
  NodeIndex u;
  NodeIndex v;
  double weight;
};

/// Append-only bijection between external node tokens and run-global ids.
/// Ids are issued in order of first appearance and stay stable for the
/// lifetime of a run.
class NodeUniverse {
 public:
  GlobalNodeId intern(std::string_view token);
  std::optional<GlobalNodeId> find(std::string_view token) const;
  const std::string& name(GlobalNodeId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, GlobalNodeId> index_;
};

/// One time-slice of an evolving weighted undirected network.
///
/// Input graphs are simple; self-loops appear only on graphs produced by
/// induce_graph, where A_uu equals twice the contracted community's internal
/// weight. strength(u) counts A_uu once, so strengths sum to 2M with
/// M = total_weight().
class SnapshotGraph {
 public:
  SnapshotGraph() = default;

  /// Simple graph from off-diagonal edges; duplicate pairs are summed,
  /// self-loops and nonpositive weights rejected. node_ids, when given,
  /// attach a run-global identity to each local index.
  static SnapshotGraph from_edges(int t, std::size_t n_nodes, std::span<const WeightedEdge> edges,
                                  std::vector<GlobalNodeId> node_ids = {});

  /// Graph with explicit self-loop weights, as produced by community
  /// contraction. Edges must still be off-diagonal.
  static SnapshotGraph from_contraction(int t, std::size_t n_nodes, std::span<const WeightedEdge> edges,
                                        std::vector<double> self_loops);

  int t() const { return t_; }
  std::size_t node_count() const { return adjacency_.size(); }
  bool empty() const { return adjacency_.empty(); }
  std::span<const Neighbor> neighbors(NodeIndex u) const { return adjacency_[u]; }
  double self_loop(NodeIndex u) const { return self_loop_[u]; }
  double strength(NodeIndex u) const { return strength_[u]; }
  double total_weight() const { return total_weight_; }
  std::size_t edge_count() const { return edge_count_; }
  /// A_uv for u != v; 0 when the pair is not an edge.
  double weight_between(NodeIndex u, NodeIndex v) const;

  bool has_node_ids() const { return !node_ids_.empty(); }
  const std::vector<GlobalNodeId>& node_ids() const { return node_ids_; }
  GlobalNodeId node_id(NodeIndex u) const { return node_ids_[u]; }
  std::optional<NodeIndex> index_of(GlobalNodeId id) const;

 private:
  void finalize();

  int t_ = 0;
  std::vector<std::vector<Neighbor>> adjacency_;  // off-diagonal, sorted by node
  std::vector<double> self_loop_;
  std::vector<double> strength_;
  double total_weight_ = 0.0;
  std::size_t edge_count_ = 0;
  std::vector<GlobalNodeId> node_ids_;
  std::unordered_map<GlobalNodeId, NodeIndex> id_index_;
};

struct SnapshotSequence {
  NodeUniverse universe;
  std::vector<SnapshotGraph> snapshots;
};

/// Community labels for every node of one snapshot. A community is a
/// maximal set of nodes sharing a label.
struct Partition {
  std::vector<Label> labels;

  static Partition singletons(std::size_t n);
  std::size_t size() const { return labels.size(); }
  Label operator[](NodeIndex u) const { return labels[u]; }
  Label& operator[](NodeIndex u) { return labels[u]; }
  bool operator==(const Partition&) const = default;
};

/// node -> community index, communities numbered by first appearance.
struct CompactLabels {
  std::vector<NodeIndex> community_of;
  std::size_t count = 0;
};
CompactLabels compact_labels(const Partition& p);

/// Same partition with labels renumbered to 0..C-1 by first appearance.
Partition compacted(const Partition& p);

std::vector<std::vector<NodeIndex>> communities_of(const Partition& p);

/// True when the two partitions induce the same co-labeling.
bool same_communities(const Partition& a, const Partition& b);

/// One contraction level: supernode -> member nodes of the finer graph.
/// The member sets partition the finer node set.
struct NodeHierarchyMap {
  std::vector<std::vector<NodeIndex>> members;
  std::size_t finer_node_count() const;
};

/// coarse maps supernodes to mid nodes, fine maps mid nodes to base nodes;
/// result maps supernodes straight to base nodes.
NodeHierarchyMap compose(const NodeHierarchyMap& coarse, const NodeHierarchyMap& fine);

/// Pull a partition of the coarse graph down to the finer graph's nodes.
Partition project_partition(const Partition& coarse, const NodeHierarchyMap& map);

struct InducedGraph {
  SnapshotGraph graph;
  NodeHierarchyMap hierarchy;
};

/// Contract each community of p into a supernode. Internal weight w becomes
/// a self-loop of weight 2w, inter-community weights are summed, and the
/// total weight is conserved exactly.
InducedGraph induce_graph(const SnapshotGraph& g, const Partition& p);

}  // namespace estranet
