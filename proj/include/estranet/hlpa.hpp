#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "estranet/graph.hpp"
#include "estranet/history.hpp"

namespace estranet {

struct RunConfig {
  std::uint64_t seed = 0;
  int max_sweeps = 1000;
  double level_improvement_epsilon = 1e-10;
};

/// Raised when a propagation run exhausts max_sweeps; carries the state it
/// reached so callers can inspect or salvage it.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& message, Partition last);
  const Partition& last_partition() const { return last_; }

 private:
  Partition last_;
};

/// Aggregates behind the label update rule for one node x: per candidate
/// label l, the adjacent weight N_xl (off-diagonal), the history weight
/// O_xl (u != x) and the label strength K_l. Candidates are the labels of
/// x's neighbors, of its history partners, and x's own label.
struct LocalAggregates {
  std::vector<Label> candidates;  // sorted ascending
  std::vector<double> adjacent_weight;
  std::vector<double> history_weight;
  std::vector<double> label_strength;
};

LocalAggregates gather_local(NodeIndex x, const SnapshotGraph& g, const HistoryWeights& z,
                             const Partition& p);

/// One greedy label update:
///   argmax_l  N_xl - k_x K_l / 2M + (k_x^2 / 2M) [l = l_x] + lambda O_xl.
/// A tie keeps the current label when it attains the maximum, otherwise the
/// smallest label wins. The self-loop A_xx stays out of N_xl, which is what
/// makes the score an exact gain in Q - lambda E.
Label best_label(NodeIndex x, const SnapshotGraph& g, const HistoryWeights& z, const Partition& p,
                 double lambda);

using UpdateObserver = std::function<void(NodeIndex node, Label from, Label to)>;

/// Sweeps every node once per round in a fresh seeded random order, applying
/// the update rule with changes visible immediately, until a sweep changes
/// nothing. Initial labels are compacted first. Throws ConvergenceError when
/// max_sweeps is exhausted.
Partition lpa_converge(const SnapshotGraph& g, const HistoryWeights& z, double lambda, Partition init,
                       const RunConfig& cfg, const UpdateObserver& observer = {});

struct HlpaResult {
  Partition partition;  // over g's original nodes, labels compacted
  double objective;     // Q - lambda E of that partition
};

/// Hierarchical propagation: converge, contract communities into supernodes
/// (aggregating history alongside), and repeat on the induced graph until a
/// level stops improving the objective by more than
/// level_improvement_epsilon. Returns the last improving level's partition
/// projected onto the original nodes. `init` overrides the level-0
/// singleton initialization when given.
HlpaResult hlpa(const SnapshotGraph& g, const HistoryWeights& z, double lambda, const RunConfig& cfg,
                const Partition* init = nullptr);

}  // namespace estranet
