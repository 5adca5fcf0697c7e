#include "estranet/history.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace estranet {

HistoryWeights HistoryWeights::from_pairs(std::size_t n, std::span<const WeightedEdge> pairs,
                                          std::vector<double> diagonal, int from_snapshot) {
  if (!diagonal.empty() && diagonal.size() != n) {
    throw std::invalid_argument("diagonal must match the node count");
  }
  HistoryWeights z;
  z.partners_.assign(n, {});
  z.diagonal_ = std::move(diagonal);
  z.from_snapshot_ = from_snapshot;
  for (const auto& e : pairs) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("history pair out of range");
    if (e.u == e.v) throw std::invalid_argument("off-diagonal history pairs must have distinct endpoints");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("history weights must be positive and finite");
    }
    z.partners_[e.u].push_back({e.v, e.weight});
    z.partners_[e.v].push_back({e.u, e.weight});
  }
  for (auto& row : z.partners_) {
    std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  z.pair_count_ = pairs.size();
  return z;
}

std::span<const Neighbor> HistoryWeights::partners(NodeIndex u) const {
  if (u >= partners_.size()) return {};
  return partners_[u];
}

double HistoryWeights::weight_between(NodeIndex u, NodeIndex v) const {
  auto row = partners(u);
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor& nb, NodeIndex x) { return nb.node < x; });
  if (it != row.end() && it->node == v) return it->weight;
  return 0.0;
}

HistoryWeights compute_history(const SnapshotGraph& prev, const Partition& prev_p, const SnapshotGraph& cur) {
  if (prev_p.size() != prev.node_count()) throw std::invalid_argument("partition does not cover the previous snapshot");
  if (!prev.has_node_ids() || !cur.has_node_ids()) {
    throw std::invalid_argument("history needs node identities on both snapshots");
  }
  std::vector<WeightedEdge> pairs;
  for (NodeIndex u = 0; u < cur.node_count(); ++u) {
    const auto pu = prev.index_of(cur.node_id(u));
    if (!pu) continue;
    for (const auto& nb : cur.neighbors(u)) {
      if (nb.node <= u) continue;
      const auto pv = prev.index_of(cur.node_id(nb.node));
      if (!pv) continue;
      if (prev_p[*pu] != prev_p[*pv]) continue;
      const double w_prev = prev.weight_between(*pu, *pv);
      if (w_prev <= 0.0) continue;
      pairs.push_back({u, nb.node, std::sqrt(w_prev * nb.weight)});
    }
  }
  return HistoryWeights::from_pairs(cur.node_count(), pairs, {}, prev.t());
}

HistoryWeights induce_history(const HistoryWeights& z, const Partition& p) {
  if (z.node_count() != 0 && z.node_count() != p.size()) {
    throw std::invalid_argument("history does not cover the partitioned graph");
  }
  const auto cl = compact_labels(p);
  const std::size_t c = cl.count;
  std::vector<double> intra(c, 0.0);  // unordered intra sum; diagonal stores 2x
  std::unordered_map<std::uint64_t, double> inter;
  for (NodeIndex u = 0; u < z.node_count(); ++u) {
    const NodeIndex cu = cl.community_of[u];
    intra[cu] += 0.5 * z.diagonal(u);
    for (const auto& nb : z.partners(u)) {
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
  std::vector<WeightedEdge> pairs;
  pairs.reserve(keys.size());
  for (auto key : keys) {
    pairs.push_back({static_cast<NodeIndex>(key >> 32), static_cast<NodeIndex>(key & 0xffffffffu), inter[key]});
  }
  std::vector<double> diagonal(c);
  for (std::size_t i = 0; i < c; ++i) diagonal[i] = 2.0 * intra[i];
  return HistoryWeights::from_pairs(c, pairs, std::move(diagonal), z.from_snapshot());
}

}  // namespace estranet
