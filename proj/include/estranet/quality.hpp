#pragma once

#include "estranet/graph.hpp"
#include "estranet/history.hpp"

namespace estranet {

/// Weighted modularity in the community-sum form
///   Q = sum_c [ e_c / M - (K_c / 2M)^2 ]
/// where e_c is community c's internal weight (self-loops count A_uu / 2)
/// and K_c its summed strength. Equals the pairwise Kronecker-delta double
/// sum. Throws std::invalid_argument when the graph has no weight.
double modularity(const SnapshotGraph& g, const Partition& p);

/// Fraction of history weight whose endpoints no longer share a label:
///   E = sum_{u<v} Z_uv [l_u != l_v] / M
/// with M the current snapshot's total weight. 0 when every positive pair
/// of z stays co-labeled.
double estrangement(const SnapshotGraph& g, const HistoryWeights& z, const Partition& p);

/// Q - lambda * E, the partition-dependent part of the Lagrangian that the
/// optimizer climbs.
double search_objective(const SnapshotGraph& g, const HistoryWeights& z, const Partition& p, double lambda);

/// Full Lagrangian Q - lambda * (E - delta). Rejects lambda < 0 and delta
/// outside [0, 1]; the delta term is constant in the partition.
double lagrangian(const SnapshotGraph& g, const HistoryWeights& z, const Partition& p,
                  double lambda, double delta);

/// Random-walk temporal stability, computed from its own two-sum form
///   S = sum Z_uv [l_u = l_v] / 2M - sum Z_uv / 2M
/// and equal to -estrangement up to rounding.
double temporal_stability(const SnapshotGraph& g, const HistoryWeights& z, const Partition& p);

}  // namespace estranet
