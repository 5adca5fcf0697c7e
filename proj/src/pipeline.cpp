#include "estranet/pipeline.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "estranet/history.hpp"
#include "estranet/quality.hpp"
#include "estranet/rng.hpp"

namespace estranet {

std::vector<LabeledCommunity> communities_by_label(const SnapshotGraph& g, const Partition& p) {
  if (p.size() != g.node_count()) throw std::invalid_argument("partition does not cover the graph");
  if (!g.has_node_ids()) throw std::invalid_argument("label mapping needs node identities");
  std::map<Label, std::vector<GlobalNodeId>> by_label;
  for (NodeIndex u = 0; u < g.node_count(); ++u) by_label[p[u]].push_back(g.node_id(u));
  std::vector<LabeledCommunity> out;
  out.reserve(by_label.size());
  for (auto& [label, members] : by_label) {
    std::sort(members.begin(), members.end());
    out.push_back({label, std::move(members)});
  }
  return out;
}

namespace {

// (jaccard, intersection, label) preference with exact arithmetic: compare
// inter/uni ratios by cross-multiplication.
struct PartnerChoice {
  int index = -1;
  std::size_t inter = 0;
  std::size_t uni = 1;
  Label label = 0;

  bool beats(const PartnerChoice& other) const {
    if (other.index < 0) return true;
    const auto lhs = static_cast<unsigned long long>(inter) * other.uni;
    const auto rhs = static_cast<unsigned long long>(other.inter) * uni;
    if (lhs != rhs) return lhs > rhs;
    if (inter != other.inter) return inter > other.inter;
    return label < other.label;
  }
};

OverlapSide make_side(const std::vector<LabeledCommunity>& comms) {
  OverlapSide side;
  side.labels.reserve(comms.size());
  for (const auto& c : comms) side.labels.push_back(c.label);
  side.partner.assign(comms.size(), -1);
  side.jaccard.assign(comms.size(), 0.0);
  side.intersection.assign(comms.size(), 0);
  return side;
}

std::size_t intersection_size(const std::vector<GlobalNodeId>& a, const std::vector<GlobalNodeId>& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

}  // namespace

OverlapGraph build_overlap_graph(const std::vector<LabeledCommunity>& prev,
                                 const std::vector<LabeledCommunity>& cur) {
  OverlapGraph graph;
  graph.prev = make_side(prev);
  graph.cur = make_side(cur);

  std::vector<PartnerChoice> best_prev(prev.size());
  std::vector<PartnerChoice> best_cur(cur.size());
  for (std::size_t i = 0; i < prev.size(); ++i) {
    for (std::size_t j = 0; j < cur.size(); ++j) {
      const std::size_t inter = intersection_size(prev[i].members, cur[j].members);
      if (inter == 0) continue;
      const std::size_t uni = prev[i].members.size() + cur[j].members.size() - inter;
      const PartnerChoice for_prev{static_cast<int>(j), inter, uni, cur[j].label};
      if (for_prev.beats(best_prev[i])) best_prev[i] = for_prev;
      const PartnerChoice for_cur{static_cast<int>(i), inter, uni, prev[i].label};
      if (for_cur.beats(best_cur[j])) best_cur[j] = for_cur;
    }
  }
  for (std::size_t i = 0; i < prev.size(); ++i) {
    graph.prev.partner[i] = best_prev[i].index;
    graph.prev.intersection[i] = best_prev[i].inter;
    if (best_prev[i].index >= 0) {
      graph.prev.jaccard[i] = static_cast<double>(best_prev[i].inter) / static_cast<double>(best_prev[i].uni);
    }
  }
  for (std::size_t j = 0; j < cur.size(); ++j) {
    graph.cur.partner[j] = best_cur[j].index;
    graph.cur.intersection[j] = best_cur[j].inter;
    if (best_cur[j].index >= 0) {
      graph.cur.jaccard[j] = static_cast<double>(best_cur[j].inter) / static_cast<double>(best_cur[j].uni);
    }
  }
  return graph;
}

LabelMapping compute_label_mapping(const std::vector<LabeledCommunity>& prev,
                                   const std::vector<LabeledCommunity>& cur, LabelRegistry& registry) {
  LabelMapping mapping;
  mapping.overlap = build_overlap_graph(prev, cur);
  mapping.raw_to_mapped.reserve(cur.size());
  for (std::size_t j = 0; j < cur.size(); ++j) {
    const int i = mapping.overlap.cur.partner[j];
    const bool mutual = i >= 0 && mapping.overlap.prev.partner[static_cast<std::size_t>(i)] ==
                                      static_cast<int>(j);
    const Label mapped = mutual ? prev[static_cast<std::size_t>(i)].label : registry.fresh();
    mapping.raw_to_mapped.emplace_back(cur[j].label, mapped);
  }
  return mapping;
}

Partition map_labels(const SnapshotGraph& prev_g, const Partition& prev_mapped,
                     const SnapshotGraph& cur_g, const Partition& cur_raw, LabelRegistry& registry,
                     bool jaccard_common_only) {
  auto prev_comms = communities_by_label(prev_g, prev_mapped);
  auto cur_comms = communities_by_label(cur_g, cur_raw);

  if (jaccard_common_only) {
    std::unordered_set<GlobalNodeId> shared;
    for (GlobalNodeId id : cur_g.node_ids()) {
      if (prev_g.index_of(id)) shared.insert(id);
    }
    auto restrict_members = [&](std::vector<LabeledCommunity>& comms) {
      for (auto& c : comms) {
        std::erase_if(c.members, [&](GlobalNodeId id) { return !shared.contains(id); });
      }
    };
    restrict_members(prev_comms);
    restrict_members(cur_comms);
  }

  const auto mapping = compute_label_mapping(prev_comms, cur_comms, registry);
  std::unordered_map<Label, Label> lookup;
  lookup.reserve(mapping.raw_to_mapped.size());
  for (const auto& [raw, mapped] : mapping.raw_to_mapped) lookup.emplace(raw, mapped);

  Partition out;
  out.labels.resize(cur_raw.size());
  for (std::size_t u = 0; u < cur_raw.size(); ++u) out.labels[u] = lookup.at(cur_raw.labels[u]);
  return out;
}

namespace {

Partition fresh_labels(const Partition& raw, LabelRegistry& registry) {
  const auto cl = compact_labels(raw);
  std::vector<Label> issued(cl.count);
  for (std::size_t c = 0; c < cl.count; ++c) issued[c] = registry.fresh();
  Partition out;
  out.labels.resize(raw.size());
  for (std::size_t u = 0; u < raw.size(); ++u) out.labels[u] = issued[cl.community_of[u]];
  return out;
}

}  // namespace

SnapshotRecord process_snapshot(PipelineState& state, const SnapshotGraph& g,
                                const PipelineConfig& cfg) {
  if (g.empty() || !(g.total_weight() > 0.0)) {
    throw std::invalid_argument("snapshot " + std::to_string(g.t()) + " has no edges");
  }
  if (!g.has_node_ids()) throw std::invalid_argument("pipeline snapshots need node identities");

  const std::uint64_t snapshot_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(g.t()));
  SolverConfig solver = cfg.solver;
  solver.seed = snapshot_seed;

  HistoryWeights z;
  if (state.prev_graph) {
    z = compute_history(*state.prev_graph, state.prev_partition, g);
    if (z.empty() && cfg.log) {
      *cfg.log << "estranet: snapshot " << g.t()
               << ": no co-labeled edges survive from the previous snapshot; solving unconstrained\n";
    }
  }

  SnapshotRecord record;
  record.t = g.t();
  Partition raw;
  const bool constrained = state.prev_graph && !z.empty() && cfg.delta < 1.0;
  const int independent_runs = std::max(solver.confirm_runs, solver.initial_runs);

  std::optional<Partition> carried;
  if (state.prev_graph) carried = copy_previous_labels(*state.prev_graph, state.prev_partition, g);
  if (cfg.warm_start && carried) solver.warm_init = carried;

  if (constrained) {
    auto solved = solve_dual(g, z, cfg.delta, solver, carried);
    raw = std::move(solved.partition);
    record.q = solved.q;
    record.e = solved.e;
    record.lambda_star = solved.lambda_star;
    record.final_lambda = solved.final_lambda;
    record.feasibility_fallback_used = solved.feasibility_fallback_used;
  } else {
    // Independent maximization: lambda = 0 with no history, so the solve is
    // the same computation as the --report-loss baseline below.
    auto eval = evaluate_dual(0.0, g, HistoryWeights{}, cfg.delta, independent_runs, snapshot_seed,
                              solver.run, solver.warm_init ? &*solver.warm_init : nullptr);
    raw = std::move(eval.best_partition);
    record.q = eval.best_q;
    record.e = z.empty() ? 0.0 : estrangement(g, z, raw);
    record.q_unconstrained = record.q;
  }

  if (cfg.report_loss) {
    if (!record.q_unconstrained) {
      auto eval = evaluate_dual(0.0, g, HistoryWeights{}, cfg.delta, independent_runs, snapshot_seed,
                                solver.run, solver.warm_init ? &*solver.warm_init : nullptr);
      record.q_unconstrained = eval.best_q;
    }
  } else {
    record.q_unconstrained.reset();
  }

  const Partition mapped =
      state.prev_graph
          ? map_labels(*state.prev_graph, state.prev_partition, g, raw, state.registry,
                       cfg.jaccard_common_only)
          : fresh_labels(raw, state.registry);

  record.labels.reserve(g.node_count());
  for (NodeIndex u = 0; u < g.node_count(); ++u) record.labels.emplace_back(g.node_id(u), mapped[u]);
  std::sort(record.labels.begin(), record.labels.end());

  state.prev_graph = g;
  state.prev_partition = mapped;
  return record;
}

TemporalResult run_pipeline(std::span<const SnapshotGraph> snapshots, const PipelineConfig& cfg) {
  if (snapshots.empty()) throw std::invalid_argument("pipeline needs at least one snapshot");
  PipelineState state;
  TemporalResult result;
  result.delta = cfg.delta;
  result.seed = cfg.seed;
  result.snapshots.reserve(snapshots.size());
  for (const auto& g : snapshots) result.snapshots.push_back(process_snapshot(state, g, cfg));
  result.labels_issued = state.registry.next_value();
  return result;
}

TemporalResult run_pipeline(const SnapshotSequence& seq, const PipelineConfig& cfg) {
  return run_pipeline(std::span<const SnapshotGraph>(seq.snapshots), cfg);
}

}  // namespace estranet
