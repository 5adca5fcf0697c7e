#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "estranet/graph.hpp"
#include "estranet/history.hpp"
#include "estranet/hlpa.hpp"

namespace estranet {

struct SolverConfig {
  double lambda_min = 0.0;
  double lambda_max = 10.0;
  double xtol = 1e-2;      // Brent tolerance on lambda
  int initial_runs = 10;   // optimizer runs for the first dual evaluation
  int runs_increment = 10; // added with every further Brent evaluation
  int max_runs = 200;      // cap on the per-evaluation schedule
  int confirm_runs = 150;  // budget of the re-evaluation at lambda_star
  double inflation = 0.1;  // geometric lambda step while infeasible
  int max_inflation_steps = 50;
  int brent_max_evaluations = 500;
  std::uint64_t seed = 0;
  RunConfig run;
  /// Level-0 initialization instead of singletons; experimental, off by
  /// default.
  std::optional<Partition> warm_init;
};

/// One best-of-runs evaluation of the dual function at a fixed lambda.
struct DualEvaluation {
  double lambda = 0.0;
  double g_value = 0.0;  // best Q - lambda E + lambda delta over the runs
  Partition best_partition;
  double best_q = 0.0;
  double best_e = 0.0;
  int runs_used = 0;
};

struct DualSolveResult {
  double lambda_star = 0.0;
  double final_lambda = 0.0;  // >= lambda_star after feasibility adjustment
  Partition partition;
  double q = 0.0;
  double e = 0.0;
  std::vector<DualEvaluation> trace;
  bool feasibility_fallback_used = false;
};

/// Run the hierarchical optimizer n_runs times with seeds derived from
/// (base_seed, lambda, run index) and keep the run with the highest
/// Q - lambda E + lambda delta. Enlarging n_runs extends the same seed
/// family, so a bigger budget can only improve the value.
DualEvaluation evaluate_dual(double lambda, const SnapshotGraph& g, const HistoryWeights& z,
                             double delta, int n_runs, std::uint64_t base_seed,
                             const RunConfig& run = {}, const Partition* init = nullptr);

/// Previous labels copied onto shared nodes, fresh labels elsewhere. Every
/// positive history pair stays co-labeled, so estrangement is exactly zero.
Partition copy_previous_labels(const SnapshotGraph& prev, const Partition& prev_p,
                               const SnapshotGraph& cur);

/// Minimize g(lambda) over [lambda_min, lambda_max] by Brent's method. Each
/// Brent evaluation is memoized per lambda and run with a growing budget
/// (initial_runs, +runs_increment per evaluation, capped at max_runs); the
/// minimizer's result is confirmed with at least confirm_runs. If the best
/// partition still breaks E <= delta, lambda is inflated geometrically; if
/// the bound cannot be met by lambda_max, `feasible_fallback` (or, when
/// absent, co-labeled components of the positive history pairs) is returned
/// with feasibility_fallback_used set.
DualSolveResult solve_dual(const SnapshotGraph& g, const HistoryWeights& z, double delta,
                           const SolverConfig& cfg, std::optional<Partition> feasible_fallback = {});

}  // namespace estranet
