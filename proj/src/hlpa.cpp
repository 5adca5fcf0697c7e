#include "estranet/hlpa.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "estranet/quality.hpp"
#include "estranet/rng.hpp"

namespace estranet {

ConvergenceError::ConvergenceError(const std::string& message, Partition last)
    : std::runtime_error(message), last_(std::move(last)) {}

namespace {

inline double update_score(double adjacent_w, double history_w, double label_strength, double k_x,
                           double inv_2m, bool is_current, double lambda) {
  double s = adjacent_w - k_x * label_strength * inv_2m + lambda * history_w;
  if (is_current) s += k_x * k_x * inv_2m;
  return s;
}

// Scratch accumulators for one node visit, reused across visits. Labels are
// dense (compacted) so plain vectors with a touched-list work.
struct VisitScratch {
  std::vector<double> adjacent;
  std::vector<double> history;
  std::vector<char> seen;
  std::vector<Label> touched;

  void resize(std::size_t n_labels) {
    adjacent.assign(n_labels, 0.0);
    history.assign(n_labels, 0.0);
    seen.assign(n_labels, 0);
  }
  void touch(Label l) {
    if (!seen[l]) {
      seen[l] = 1;
      touched.push_back(l);
    }
  }
  void reset() {
    for (Label l : touched) {
      adjacent[l] = 0.0;
      history[l] = 0.0;
      seen[l] = 0;
    }
    touched.clear();
  }
};

Label pick_label(const VisitScratch& scratch, std::span<const double> label_strength, Label current,
                 double k_x, double inv_2m, double lambda) {
  // Candidates must be scanned in ascending label order so the smallest
  // label wins exact ties that the current label does not attain.
  thread_local std::vector<Label> candidates;
  candidates.assign(scratch.touched.begin(), scratch.touched.end());
  std::sort(candidates.begin(), candidates.end());

  double best_score = 0.0;
  Label best = current;
  bool have_best = false;
  double current_score = 0.0;
  for (Label l : candidates) {
    const double s = update_score(scratch.adjacent[l], scratch.history[l], label_strength[l], k_x,
                                  inv_2m, l == current, lambda);
    if (l == current) current_score = s;
    if (!have_best || s > best_score) {
      best_score = s;
      best = l;
      have_best = true;
    }
  }
  if (current_score == best_score) return current;
  return best;
}

}  // namespace

LocalAggregates gather_local(NodeIndex x, const SnapshotGraph& g, const HistoryWeights& z,
                             const Partition& p) {
  if (p.size() != g.node_count()) throw std::invalid_argument("partition does not cover the graph");
  std::vector<Label> candidates{p[x]};
  for (const auto& nb : g.neighbors(x)) candidates.push_back(p[nb.node]);
  for (const auto& pr : z.partners(x)) candidates.push_back(p[pr.node]);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  LocalAggregates out;
  out.candidates = std::move(candidates);
  const std::size_t k = out.candidates.size();
  out.adjacent_weight.assign(k, 0.0);
  out.history_weight.assign(k, 0.0);
  out.label_strength.assign(k, 0.0);
  auto slot = [&](Label l) {
    return static_cast<std::size_t>(
        std::lower_bound(out.candidates.begin(), out.candidates.end(), l) - out.candidates.begin());
  };
  for (const auto& nb : g.neighbors(x)) out.adjacent_weight[slot(p[nb.node])] += nb.weight;
  for (const auto& pr : z.partners(x)) out.history_weight[slot(p[pr.node])] += pr.weight;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    const Label l = p[u];
    const auto it = std::lower_bound(out.candidates.begin(), out.candidates.end(), l);
    if (it != out.candidates.end() && *it == l) {
      out.label_strength[static_cast<std::size_t>(it - out.candidates.begin())] += g.strength(u);
    }
  }
  return out;
}

Label best_label(NodeIndex x, const SnapshotGraph& g, const HistoryWeights& z, const Partition& p,
                 double lambda) {
  const auto agg = gather_local(x, g, z, p);
  const double k_x = g.strength(x);
  const double inv_2m = 1.0 / (2.0 * g.total_weight());
  const Label current = p[x];
  double best_score = 0.0;
  double current_score = 0.0;
  Label best = current;
  bool have_best = false;
  for (std::size_t i = 0; i < agg.candidates.size(); ++i) {
    const Label l = agg.candidates[i];
    const double s = update_score(agg.adjacent_weight[i], agg.history_weight[i], agg.label_strength[i],
                                  k_x, inv_2m, l == current, lambda);
    if (l == current) current_score = s;
    if (!have_best || s > best_score) {
      best_score = s;
      best = l;
      have_best = true;
    }
  }
  if (current_score == best_score) return current;
  return best;
}

Partition lpa_converge(const SnapshotGraph& g, const HistoryWeights& z, double lambda, Partition init,
                       const RunConfig& cfg, const UpdateObserver& observer) {
  const std::size_t n = g.node_count();
  if (init.size() != n) throw std::invalid_argument("initial partition does not cover the graph");
  if (z.node_count() != 0 && z.node_count() != n) {
    throw std::invalid_argument("history does not cover the graph");
  }
  if (cfg.max_sweeps < 1) throw std::invalid_argument("max_sweeps must be at least 1");
  if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");

  Partition p = compacted(init);
  if (n == 0) return p;

  const double inv_2m = 1.0 / (2.0 * g.total_weight());
  std::vector<double> label_strength(n, 0.0);
  VisitScratch scratch;
  scratch.resize(n);

  std::mt19937_64 rng(splitmix64(cfg.seed));
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    // fresh strength table per sweep; incremental updates within it
    std::fill(label_strength.begin(), label_strength.end(), 0.0);
    for (NodeIndex u = 0; u < n; ++u) label_strength[p[u]] += g.strength(u);

    const auto order = random_permutation(n, rng);
    bool changed = false;
    for (NodeIndex x : order) {
      const Label current = p[x];
      scratch.reset();
      scratch.touch(current);
      for (const auto& nb : g.neighbors(x)) {
        const Label l = p[nb.node];
        scratch.touch(l);
        scratch.adjacent[l] += nb.weight;
      }
      for (const auto& pr : z.partners(x)) {
        const Label l = p[pr.node];
        scratch.touch(l);
        scratch.history[l] += pr.weight;
      }
      const Label next = pick_label(scratch, label_strength, current, g.strength(x), inv_2m, lambda);
      if (next != current) {
        label_strength[current] -= g.strength(x);
        label_strength[next] += g.strength(x);
        p[x] = next;
        changed = true;
        if (observer) observer(x, current, next);
      }
    }
    if (!changed) return p;
  }
  throw ConvergenceError("label propagation did not converge within max_sweeps", std::move(p));
}

HlpaResult hlpa(const SnapshotGraph& g, const HistoryWeights& z, double lambda, const RunConfig& cfg,
                const Partition* init) {
  if (g.empty() || !(g.total_weight() > 0.0)) {
    throw std::invalid_argument("graph has no weight; nothing to optimize");
  }
  RunConfig level_cfg = cfg;
  level_cfg.seed = mix_seed(cfg.seed, 0);
  Partition level_p = lpa_converge(g, z, lambda,
                                   init ? *init : Partition::singletons(g.node_count()), level_cfg);
  double best_objective = search_objective(g, z, level_p, lambda);
  Partition best = compacted(level_p);

  // original node -> supernode of the next induced level
  std::vector<NodeIndex> to_super = compact_labels(level_p).community_of;
  SnapshotGraph level_g;
  HistoryWeights level_z;
  const SnapshotGraph* cur_g = &g;
  const HistoryWeights* cur_z = &z;

  for (int level = 1;; ++level) {
    InducedGraph induced = induce_graph(*cur_g, level_p);
    HistoryWeights induced_z = induce_history(*cur_z, level_p);
    level_cfg.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(level));
    Partition q = lpa_converge(induced.graph, induced_z, lambda,
                               Partition::singletons(induced.graph.node_count()), level_cfg);
    const double objective = search_objective(induced.graph, induced_z, q, lambda);
    if (objective <= best_objective + cfg.level_improvement_epsilon) break;

    best_objective = objective;
    for (std::size_t u = 0; u < best.size(); ++u) best.labels[u] = q[to_super[u]];
    best = compacted(best);

    const auto cq = compact_labels(q);
    for (auto& s : to_super) s = cq.community_of[s];
    level_g = std::move(induced.graph);
    level_z = std::move(induced_z);
    cur_g = &level_g;
    cur_z = &level_z;
    level_p = std::move(q);
  }
  return {std::move(best), best_objective};
}

}  // namespace estranet
