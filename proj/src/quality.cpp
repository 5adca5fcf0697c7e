#include "estranet/quality.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace estranet {

namespace {

// Neumaier-compensated accumulator; keeps the quality sums stable enough for
// the dual solver to compare values that differ by little.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void check_scored_inputs(const SnapshotGraph& g, const Partition& p) {
  if (p.size() != g.node_count()) throw std::invalid_argument("partition does not cover the graph");
  if (g.empty() || !(g.total_weight() > 0.0)) {
    throw std::invalid_argument("graph has no weight; quality scores are undefined");
  }
}

}  // namespace

double modularity(const SnapshotGraph& g, const Partition& p) {
  check_scored_inputs(g, p);
  const auto cl = compact_labels(p);
  std::vector<double> internal(cl.count, 0.0);
  std::vector<double> strength(cl.count, 0.0);
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    const NodeIndex c = cl.community_of[u];
    internal[c] += 0.5 * g.self_loop(u);
    strength[c] += g.strength(u);
    for (const auto& nb : g.neighbors(u)) {
      if (nb.node > u && cl.community_of[nb.node] == c) internal[c] += nb.weight;
    }
  }
  const double m = g.total_weight();
  const double inv_2m = 1.0 / (2.0 * m);
  CompensatedSum q;
  for (std::size_t c = 0; c < cl.count; ++c) {
    const double share = strength[c] * inv_2m;
    q.add(internal[c] / m - share * share);
  }
  return q.value();
}

double estrangement(const SnapshotGraph& g, const HistoryWeights& z, const Partition& p) {
  check_scored_inputs(g, p);
  if (z.node_count() != 0 && z.node_count() != g.node_count()) {
    throw std::invalid_argument("history does not cover the graph");
  }
  CompensatedSum estranged;
  for (NodeIndex u = 0; u < z.node_count(); ++u) {
    for (const auto& pr : z.partners(u)) {
      if (pr.node <= u) continue;
      if (p[u] != p[pr.node]) estranged.add(pr.weight);
    }
  }
  return estranged.value() / g.total_weight();
}

double search_objective(const SnapshotGraph& g, const HistoryWeights& z, const Partition& p, double lambda) {
  return modularity(g, p) - lambda * estrangement(g, z, p);
}

double lagrangian(const SnapshotGraph& g, const HistoryWeights& z, const Partition& p,
                  double lambda, double delta) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0, 1]");
  return search_objective(g, z, p, lambda) + lambda * delta;
}

double temporal_stability(const SnapshotGraph& g, const HistoryWeights& z, const Partition& p) {
  check_scored_inputs(g, p);
  if (z.node_count() != 0 && z.node_count() != g.node_count()) {
    throw std::invalid_argument("history does not cover the graph");
  }
  // Diagonal history appears in both sums and cancels; skip it outright.
  CompensatedSum stable;
  CompensatedSum total;
  for (NodeIndex u = 0; u < z.node_count(); ++u) {
    for (const auto& pr : z.partners(u)) {
      if (pr.node <= u) continue;
      total.add(pr.weight);
      if (p[u] == p[pr.node]) stable.add(pr.weight);
    }
  }
  return (stable.value() - total.value()) / g.total_weight();
}

}  // namespace estranet
