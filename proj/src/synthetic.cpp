#include "estranet/synthetic.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "estranet/rng.hpp"

namespace estranet {

HiddenGroupSpec HiddenGroupSpec::defaults() {
  HiddenGroupSpec spec;
  PhaseSpec first{0, 19, {}};
  for (NodeIndex u = 0; u <= 9; ++u) first.members.push_back(u);
  PhaseSpec second{20, 39, {}};
  for (NodeIndex u = 9; u <= 19; ++u) second.members.push_back(u);
  spec.phases = {std::move(first), std::move(second)};
  return spec;
}

namespace {

std::uint64_t pair_key(NodeIndex u, NodeIndex v) {
  const auto lo = std::min(u, v);
  const auto hi = std::max(u, v);
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

void validate(const HiddenGroupSpec& spec) {
  if (spec.n_nodes < 2) throw std::invalid_argument("need at least two nodes");
  if (spec.n_snapshots < 1) throw std::invalid_argument("need at least one snapshot");
  const auto max_pairs =
      static_cast<std::uint64_t>(spec.n_nodes) * (spec.n_nodes - 1) / 2;
  if (spec.background_edges < 0 || static_cast<std::uint64_t>(spec.background_edges) > max_pairs) {
    throw std::invalid_argument("background edge count exceeds the available pairs");
  }
  if (spec.extra_edges < 0) throw std::invalid_argument("extra edge count must be nonnegative");
  std::vector<char> covered(spec.n_snapshots, 0);
  for (const auto& phase : spec.phases) {
    if (phase.first_snapshot < 0 || phase.last_snapshot >= spec.n_snapshots ||
        phase.first_snapshot > phase.last_snapshot) {
      throw std::invalid_argument("phase window out of range");
    }
    for (int t = phase.first_snapshot; t <= phase.last_snapshot; ++t) {
      if (covered[t]) throw std::invalid_argument("phase windows overlap");
      covered[t] = 1;
    }
    for (NodeIndex u : phase.members) {
      if (u >= static_cast<NodeIndex>(spec.n_nodes)) {
        throw std::invalid_argument("phase member out of range");
      }
    }
    const auto member_pairs =
        static_cast<std::uint64_t>(phase.members.size()) * (phase.members.size() ? phase.members.size() - 1 : 0) / 2;
    if (spec.extra_edges > 0 && static_cast<std::uint64_t>(spec.extra_edges) > member_pairs) {
      throw std::invalid_argument("extra edge count exceeds the group's pairs");
    }
  }
  for (int t = 0; t < spec.n_snapshots; ++t) {
    if (!covered[t]) throw std::invalid_argument("phase windows must cover every snapshot");
  }
}

const PhaseSpec& active_phase(const HiddenGroupSpec& spec, int t) {
  for (const auto& phase : spec.phases) {
    if (t >= phase.first_snapshot && t <= phase.last_snapshot) return phase;
  }
  throw std::logic_error("uncovered snapshot");
}

}  // namespace

SnapshotSequence generate_hidden_group_sequence(const HiddenGroupSpec& spec) {
  validate(spec);
  SnapshotSequence seq;
  std::vector<GlobalNodeId> ids(spec.n_nodes);
  for (int u = 0; u < spec.n_nodes; ++u) ids[u] = seq.universe.intern(std::to_string(u));

  const auto n = static_cast<NodeIndex>(spec.n_nodes);
  for (int t = 0; t < spec.n_snapshots; ++t) {
    std::mt19937_64 rng(mix_seed(spec.seed, static_cast<std::uint64_t>(t)));
    std::unordered_set<std::uint64_t> placed;
    std::vector<WeightedEdge> edges;
    edges.reserve(static_cast<std::size_t>(spec.background_edges + spec.extra_edges));

    while (edges.size() < static_cast<std::size_t>(spec.background_edges)) {
      const auto u = static_cast<NodeIndex>(uniform_index(rng, n));
      const auto v = static_cast<NodeIndex>(uniform_index(rng, n));
      if (u == v) continue;
      if (!placed.insert(pair_key(u, v)).second) continue;
      edges.push_back({std::min(u, v), std::max(u, v), 1.0});
    }

    const auto& phase = active_phase(spec, t);
    if (spec.extra_edges > 0) {
      // uniform sample of the group's still-free pairs, exact count kept
      std::vector<std::pair<NodeIndex, NodeIndex>> pool;
      for (std::size_t i = 0; i < phase.members.size(); ++i) {
        for (std::size_t j = i + 1; j < phase.members.size(); ++j) {
          const auto u = phase.members[i];
          const auto v = phase.members[j];
          if (!placed.contains(pair_key(u, v))) pool.emplace_back(std::min(u, v), std::max(u, v));
        }
      }
      if (pool.size() < static_cast<std::size_t>(spec.extra_edges)) {
        throw std::invalid_argument("snapshot " + std::to_string(t) +
                                    ": not enough free member pairs for the extra edges");
      }
      shuffle_inplace(pool, rng);
      for (int k = 0; k < spec.extra_edges; ++k) {
        edges.push_back({pool[k].first, pool[k].second, 1.0});
        placed.insert(pair_key(pool[k].first, pool[k].second));
      }
    }
    seq.snapshots.push_back(SnapshotGraph::from_edges(t, n, edges, ids));
  }
  return seq;
}

std::vector<double> planted_cohesion(const TemporalResult& result, const HiddenGroupSpec& spec) {
  validate(spec);
  std::vector<double> cohesion;
  cohesion.reserve(spec.phases.size());
  for (const auto& phase : spec.phases) {
    const std::size_t g = phase.members.size();
    const std::size_t pairs = g * (g - 1) / 2;
    if (pairs == 0) {
      cohesion.push_back(0.0);
      continue;
    }
    double total = 0.0;
    std::size_t snapshots = 0;
    for (const auto& record : result.snapshots) {
      if (record.t < phase.first_snapshot || record.t > phase.last_snapshot) continue;
      ++snapshots;
      std::unordered_map<GlobalNodeId, Label> labels;
      labels.reserve(record.labels.size());
      for (const auto& [id, label] : record.labels) labels.emplace(id, label);
      std::size_t shared = 0;
      for (std::size_t i = 0; i < g; ++i) {
        const auto it_i = labels.find(static_cast<GlobalNodeId>(phase.members[i]));
        if (it_i == labels.end()) continue;
        for (std::size_t j = i + 1; j < g; ++j) {
          const auto it_j = labels.find(static_cast<GlobalNodeId>(phase.members[j]));
          if (it_j != labels.end() && it_i->second == it_j->second) ++shared;
        }
      }
      total += static_cast<double>(shared) / static_cast<double>(pairs);
    }
    cohesion.push_back(snapshots > 0 ? total / static_cast<double>(snapshots) : 0.0);
  }
  return cohesion;
}

}  // namespace estranet
