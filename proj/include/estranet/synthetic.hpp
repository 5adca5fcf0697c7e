#pragma once

#include <cstdint>
#include <vector>

#include "estranet/graph.hpp"
#include "estranet/pipeline.hpp"

namespace estranet {

/// One planted phase: which nodes form the dense hidden group over which
/// snapshot window (both ends inclusive).
struct PhaseSpec {
  int first_snapshot = 0;
  int last_snapshot = 0;
  std::vector<NodeIndex> members;
};

/// Evolving random network with hidden groups: each snapshot is an
/// independent uniform G(n, m) background plus extra_edges additional
/// distinct edges placed among the active phase's members. All weights 1.
struct HiddenGroupSpec {
  int n_nodes = 40;
  int background_edges = 80;
  int extra_edges = 20;
  int n_snapshots = 40;
  std::vector<PhaseSpec> phases;
  std::uint64_t seed = 0;

  /// The stock two-phase layout: nodes 0-9 dense over snapshots 0-19, then
  /// nodes 9-19 over snapshots 20-39.
  static HiddenGroupSpec defaults();
};

/// Deterministic in the spec; node tokens are the decimal node indices, so
/// global id i names node i.
SnapshotSequence generate_hidden_group_sequence(const HiddenGroupSpec& spec);

/// Per phase, the mean over its snapshots of the fraction of member pairs
/// sharing a label (absent members count as not sharing). In [0, 1].
std::vector<double> planted_cohesion(const TemporalResult& result, const HiddenGroupSpec& spec);

}  // namespace estranet
