#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "estranet/graph.hpp"

namespace estranet {

/// Minimal view of a detection result for charting: per snapshot, the node
/// tokens and their labels.
struct ChartInput {
  struct Snapshot {
    int t = 0;
    std::vector<std::pair<std::string, Label>> labels;
  };
  std::vector<Snapshot> snapshots;
};

/// Node-by-time label grid. Rows are ordered by each node's tuple of labels
/// (labels within a tuple sorted by how often the node held them), absent
/// entries sorting last; ties fall back to first appearance, then name.
struct EvolutionChart {
  std::vector<std::string> nodes;
  std::vector<int> times;
  std::vector<std::vector<std::optional<Label>>> cells;  // [row][column]
};

EvolutionChart build_evolution_chart(const ChartInput& input);

/// Matrix as text: one row per node, one column per snapshot, `-` marks an
/// absent node.
void write_chart_tsv(const EvolutionChart& chart, std::ostream& out);

/// Colored pixel grid; label colors cycle a 16-color palette, listed in a
/// legend below the grid.
void write_chart_svg(const EvolutionChart& chart, std::ostream& out, int cell_px = 8);

}  // namespace estranet
