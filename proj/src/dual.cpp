#include "estranet/dual.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "estranet/brent.hpp"
#include "estranet/quality.hpp"
#include "estranet/rng.hpp"

namespace estranet {

DualEvaluation evaluate_dual(double lambda, const SnapshotGraph& g, const HistoryWeights& z,
                             double delta, int n_runs, std::uint64_t base_seed, const RunConfig& run,
                             const Partition* init) {
  if (n_runs < 1) throw std::invalid_argument("evaluate_dual: need at least one run");
  if (lambda < 0.0) throw std::invalid_argument("evaluate_dual: lambda must be nonnegative");

  Partition best;
  double best_objective = 0.0;
  for (int i = 0; i < n_runs; ++i) {
    RunConfig run_cfg = run;
    run_cfg.seed = run_seed(base_seed, lambda, i);
    auto result = hlpa(g, z, lambda, run_cfg, init);
    // rank runs by the objective recomputed on the original graph so the
    // reported value and the selection agree exactly
    const double objective = search_objective(g, z, result.partition, lambda);
    if (i == 0 || objective > best_objective) {
      best_objective = objective;
      best = std::move(result.partition);
    }
  }
  DualEvaluation eval;
  eval.lambda = lambda;
  eval.best_q = modularity(g, best);
  eval.best_e = estrangement(g, z, best);
  eval.g_value = eval.best_q - lambda * eval.best_e + lambda * delta;
  eval.best_partition = std::move(best);
  eval.runs_used = n_runs;
  return eval;
}

Partition copy_previous_labels(const SnapshotGraph& prev, const Partition& prev_p,
                               const SnapshotGraph& cur) {
  if (prev_p.size() != prev.node_count()) {
    throw std::invalid_argument("partition does not cover the previous snapshot");
  }
  if (!prev.has_node_ids() || !cur.has_node_ids()) {
    throw std::invalid_argument("copying labels needs node identities on both snapshots");
  }
  Label fresh = 0;
  for (Label l : prev_p.labels) fresh = std::max(fresh, l + 1);
  Partition out;
  out.labels.resize(cur.node_count());
  for (NodeIndex u = 0; u < cur.node_count(); ++u) {
    const auto pu = prev.index_of(cur.node_id(u));
    out.labels[u] = pu ? prev_p[*pu] : fresh++;
  }
  return out;
}

namespace {

// Co-label each connected component of the positive history pairs; also has
// estrangement exactly zero. Used when no explicit fallback is supplied.
Partition history_component_labels(const SnapshotGraph& g, const HistoryWeights& z) {
  const std::size_t n = g.node_count();
  std::vector<NodeIndex> parent(n);
  for (std::size_t u = 0; u < n; ++u) parent[u] = static_cast<NodeIndex>(u);
  std::function<NodeIndex(NodeIndex)> find = [&](NodeIndex u) {
    while (parent[u] != u) {
      parent[u] = parent[parent[u]];
      u = parent[u];
    }
    return u;
  };
  for (NodeIndex u = 0; u < z.node_count(); ++u) {
    for (const auto& pr : z.partners(u)) {
      if (pr.node <= u) continue;
      parent[find(u)] = find(pr.node);
    }
  }
  Partition p;
  p.labels.resize(n);
  for (NodeIndex u = 0; u < n; ++u) p.labels[u] = static_cast<Label>(find(u));
  return compacted(p);
}

}  // namespace

DualSolveResult solve_dual(const SnapshotGraph& g, const HistoryWeights& z, double delta,
                           const SolverConfig& cfg, std::optional<Partition> feasible_fallback) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("solve_dual: delta must lie in [0, 1]");
  if (!(cfg.lambda_min >= 0.0 && cfg.lambda_min < cfg.lambda_max)) {
    throw std::invalid_argument("solve_dual: invalid lambda interval");
  }

  DualSolveResult result;
  const Partition* init = cfg.warm_init ? &*cfg.warm_init : nullptr;
  auto fresh_eval = [&](double lambda, int runs) -> std::size_t {
    result.trace.push_back(evaluate_dual(lambda, g, z, delta, runs, cfg.seed, cfg.run, init));
    return result.trace.size() - 1;
  };

  // Without binding history the dual is minimized at lambda_min: g(lambda)
  // is then best-Q plus a nonnegative slope in lambda.
  if (z.empty() || delta >= 1.0) {
    const auto idx = fresh_eval(cfg.lambda_min, std::max(cfg.confirm_runs, cfg.initial_runs));
    const auto& eval = result.trace[idx];
    result.lambda_star = cfg.lambda_min;
    result.final_lambda = cfg.lambda_min;
    result.partition = eval.best_partition;
    result.q = eval.best_q;
    result.e = eval.best_e;
    return result;
  }

  // Brent sees a memoized function of lambda: re-requests return the cached
  // value instead of re-sampling.
  std::unordered_map<std::uint64_t, std::size_t> memo;
  int brent_evaluations = 0;
  auto dual_value = [&](double lambda) -> double {
    const auto key = double_bits(lambda);
    if (auto it = memo.find(key); it != memo.end()) return result.trace[it->second].g_value;
    const int scheduled = cfg.initial_runs + cfg.runs_increment * brent_evaluations;
    ++brent_evaluations;
    const int runs = std::max(1, std::min(scheduled, cfg.max_runs));
    const auto idx = fresh_eval(lambda, runs);
    memo.emplace(key, idx);
    return result.trace[idx].g_value;
  };
  const auto brent =
      brent_minimize(dual_value, cfg.lambda_min, cfg.lambda_max, cfg.xtol, cfg.brent_max_evaluations);
  result.lambda_star = brent.x;

  // Confirmation pass near the optimum with a larger budget; the seed family
  // extends the one Brent used at this lambda.
  auto accept = [&](std::size_t idx, double lambda) {
    const auto& eval = result.trace[idx];
    result.final_lambda = lambda;
    result.partition = eval.best_partition;
    result.q = eval.best_q;
    result.e = eval.best_e;
  };
  const int confirm = std::max(cfg.confirm_runs, 1);
  const auto star_idx = fresh_eval(result.lambda_star, confirm);
  if (result.trace[star_idx].best_e <= delta) {
    accept(star_idx, result.lambda_star);
    return result;
  }

  // The landscape is degenerate near lambda_star; push lambda up until the
  // best partition falls inside the feasible region.
  const double base = result.lambda_star > 0.0 ? result.lambda_star : cfg.xtol;
  for (int k = 1; k <= cfg.max_inflation_steps; ++k) {
    const double lambda = std::min(base * std::pow(1.0 + cfg.inflation, k), cfg.lambda_max);
    const auto idx = fresh_eval(lambda, confirm);
    if (result.trace[idx].best_e <= delta) {
      accept(idx, lambda);
      return result;
    }
    if (lambda >= cfg.lambda_max) break;
  }

  result.partition =
      feasible_fallback ? std::move(*feasible_fallback) : history_component_labels(g, z);
  result.q = modularity(g, result.partition);
  result.e = estrangement(g, z, result.partition);
  result.final_lambda = cfg.lambda_max;
  result.feasibility_fallback_used = true;
  return result;
}

}  // namespace estranet
