#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "estranet/dual.hpp"
#include "estranet/graph.hpp"

namespace estranet {

/// Monotone source of community labels. A label handed out once is never
/// reissued, so retired labels cannot reappear.
class LabelRegistry {
 public:
  Label fresh() { return next_++; }
  Label next_value() const { return next_; }

 private:
  Label next_ = 0;
};

struct LabeledCommunity {
  Label label;
  std::vector<GlobalNodeId> members;  // sorted
};

/// Communities keyed by label, ordered by label. The graph must carry node
/// identities.
std::vector<LabeledCommunity> communities_by_label(const SnapshotGraph& g, const Partition& p);

/// One side's outgoing partner links in the bipartite overlap construction.
struct OverlapSide {
  std::vector<Label> labels;
  std::vector<int> partner;  // index into the other side; -1 without overlap
  std::vector<double> jaccard;
  std::vector<std::size_t> intersection;
};

struct OverlapGraph {
  OverlapSide prev;
  OverlapSide cur;
};

/// Every community points at its maximal-Jaccard counterpart on the other
/// side (ties: larger intersection, then smaller label). Communities whose
/// node sets overlap nothing have no partner.
OverlapGraph build_overlap_graph(const std::vector<LabeledCommunity>& prev,
                                 const std::vector<LabeledCommunity>& cur);

struct LabelMapping {
  std::vector<std::pair<Label, Label>> raw_to_mapped;  // sorted by raw label
  OverlapGraph overlap;
};

/// Mutual-maximal-overlap inheritance: a current community takes a previous
/// community's label exactly when the two point at each other; every other
/// current community draws a fresh label. The result is a bijection on the
/// raw labels.
LabelMapping compute_label_mapping(const std::vector<LabeledCommunity>& prev,
                                   const std::vector<LabeledCommunity>& cur, LabelRegistry& registry);

/// Relabel cur_raw by the inheritance rule against the previous mapped
/// partition. With jaccard_common_only, overlaps are computed on the nodes
/// present in both snapshots.
Partition map_labels(const SnapshotGraph& prev_g, const Partition& prev_mapped,
                     const SnapshotGraph& cur_g, const Partition& cur_raw, LabelRegistry& registry,
                     bool jaccard_common_only = false);

struct PipelineConfig {
  double delta = 0.05;
  std::uint64_t seed = 0;
  SolverConfig solver;
  bool report_loss = false;
  bool jaccard_common_only = false;
  bool warm_start = false;
  std::ostream* log = nullptr;
};

struct SnapshotRecord {
  int t = 0;
  std::vector<std::pair<GlobalNodeId, Label>> labels;  // sorted by node id
  double lambda_star = 0.0;
  double final_lambda = 0.0;
  double q = 0.0;
  double e = 0.0;
  std::optional<double> q_unconstrained;
  bool feasibility_fallback_used = false;
};

/// Online memory between snapshots: exactly one previous graph and its
/// mapped partition, plus the label registry.
struct PipelineState {
  std::optional<SnapshotGraph> prev_graph;
  Partition prev_partition;
  LabelRegistry registry;
};

/// Solve one snapshot against the state and advance it. The first snapshot
/// (and any snapshot whose history is empty, or delta >= 1) is solved as
/// independent modularity maximization at lambda = 0.
SnapshotRecord process_snapshot(PipelineState& state, const SnapshotGraph& g,
                                const PipelineConfig& cfg);

struct TemporalResult {
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::vector<SnapshotRecord> snapshots;
  Label labels_issued = 0;
};

TemporalResult run_pipeline(std::span<const SnapshotGraph> snapshots, const PipelineConfig& cfg);
TemporalResult run_pipeline(const SnapshotSequence& seq, const PipelineConfig& cfg);

}  // namespace estranet
