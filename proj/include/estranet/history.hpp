#pragma once

#include <span>
#include <vector>

#include "estranet/graph.hpp"

namespace estranet {

/// Per-pair memory of co-affiliation carried over from the previous
/// snapshot. Z_uv = sqrt(A_prev_uv * A_cur_uv) when {u,v} is an edge of both
/// snapshots and u, v shared a label in the previous partition; absent
/// otherwise. Rows use the current snapshot's local node indices.
///
/// The diagonal aggregates contracted intra-community history on induced
/// levels (Z_cc, ordered-pair convention, mirroring the 2x self-loop rule);
/// it never contributes to estrangement or to the label update rule.
///
/// A default-constructed value is the empty history and is valid against
/// any graph.
class HistoryWeights {
 public:
  HistoryWeights() = default;

  static HistoryWeights from_pairs(std::size_t n, std::span<const WeightedEdge> pairs,
                                   std::vector<double> diagonal = {}, int from_snapshot = -1);

  std::size_t node_count() const { return partners_.size(); }
  bool empty() const { return pair_count_ == 0; }
  std::size_t pair_count() const { return pair_count_; }
  std::span<const Neighbor> partners(NodeIndex u) const;
  double diagonal(NodeIndex u) const { return u < diagonal_.size() ? diagonal_[u] : 0.0; }
  int from_snapshot() const { return from_snapshot_; }
  /// Z_uv for u != v; 0 when absent.
  double weight_between(NodeIndex u, NodeIndex v) const;

 private:
  std::vector<std::vector<Neighbor>> partners_;  // symmetric, off-diagonal, sorted
  std::vector<double> diagonal_;
  std::size_t pair_count_ = 0;
  int from_snapshot_ = -1;
};

/// Z per the co-affiliation rule: positive exactly on pairs that are edges
/// of both snapshots and were co-labeled in prev_p. Both graphs must carry
/// node ids; output indices are cur's.
HistoryWeights compute_history(const SnapshotGraph& prev, const Partition& prev_p, const SnapshotGraph& cur);

/// Aggregate history between supernodes: Z_cd sums Z_ij over member pairs,
/// intra-community weight moves to the diagonal (ordered-pair convention).
/// Supernodes are numbered exactly as induce_graph numbers them for p.
HistoryWeights induce_history(const HistoryWeights& z, const Partition& p);

}  // namespace estranet
