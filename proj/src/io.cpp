#include "estranet/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace estranet {

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::optional<long long> parse_timestamp(std::string_view s) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < 0) return std::nullopt;
  return value;
}

std::optional<double> parse_weight(std::string_view s) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

struct PendingSnapshot {
  long long t = 0;
  std::vector<NodeIndex> locals;             // insertion order of local nodes
  std::unordered_map<GlobalNodeId, NodeIndex> local_of;
  std::vector<GlobalNodeId> node_ids;
  std::vector<WeightedEdge> edges;

  NodeIndex local(GlobalNodeId id) {
    auto [it, inserted] = local_of.emplace(id, static_cast<NodeIndex>(node_ids.size()));
    if (inserted) node_ids.push_back(id);
    return it->second;
  }
};

SnapshotGraph build(PendingSnapshot&& pending) {
  return SnapshotGraph::from_edges(static_cast<int>(pending.t), pending.node_ids.size(), pending.edges,
                                   std::move(pending.node_ids));
}

void add_record(PendingSnapshot& snap, NodeUniverse& universe, std::string_view u, std::string_view v,
                std::string_view w_field, const std::string& source, std::size_t line_no) {
  if (u == v) throw ParseError(source, line_no, "self-loop '" + std::string(u) + "' rejected");
  double w = 1.0;
  if (!w_field.empty()) {
    const auto parsed = parse_weight(w_field);
    if (!parsed) throw ParseError(source, line_no, "malformed weight '" + std::string(w_field) + "'");
    w = *parsed;
  }
  if (!(w > 0.0)) throw ParseError(source, line_no, "edge weight must be positive");
  const NodeIndex lu = snap.local(universe.intern(u));
  const NodeIndex lv = snap.local(universe.intern(v));
  snap.edges.push_back({lu, lv, w});
}

SnapshotSequence parse_stream_impl(std::istream& in, const std::string& source) {
  SnapshotSequence seq;
  std::optional<PendingSnapshot> pending;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty() || fields[0].front() == '#') continue;
    if (fields.size() < 3 || fields.size() > 4) {
      throw ParseError(source, line_no, "expected '<t> <u> <v> [w]'");
    }
    const auto t = parse_timestamp(fields[0]);
    if (!t) throw ParseError(source, line_no, "malformed timestamp '" + std::string(fields[0]) + "'");
    if (pending && *t < pending->t) {
      throw ParseError(source, line_no, "timestamps must be nondecreasing");
    }
    if (!pending || *t > pending->t) {
      if (pending) seq.snapshots.push_back(build(std::move(*pending)));
      pending = PendingSnapshot{};
      pending->t = *t;
    }
    add_record(*pending, seq.universe, fields[1], fields[2], fields.size() == 4 ? fields[3] : std::string_view{},
               source, line_no);
  }
  if (pending) seq.snapshots.push_back(build(std::move(*pending)));
  return seq;
}

SnapshotSequence load_directory(const std::filesystem::path& dir) {
  std::map<long long, std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (name.size() <= 6 || name.substr(name.size() - 6) != ".edges") continue;
    const auto t = parse_timestamp(std::string_view(name).substr(0, name.size() - 6));
    if (!t) continue;
    files.emplace(*t, entry.path());
  }
  SnapshotSequence seq;
  for (const auto& [t, path] : files) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    PendingSnapshot pending;
    pending.t = t;
    std::string line;
    std::size_t line_no = 0;
    const std::string source = path.string();
    while (std::getline(in, line)) {
      ++line_no;
      const auto fields = split_fields(line);
      if (fields.empty() || fields[0].front() == '#') continue;
      if (fields.size() < 2 || fields.size() > 3) {
        throw ParseError(source, line_no, "expected '<u> <v> [w]'");
      }
      add_record(pending, seq.universe, fields[0], fields[1],
                 fields.size() == 3 ? fields[2] : std::string_view{}, source, line_no);
    }
    seq.snapshots.push_back(build(std::move(pending)));
  }
  return seq;
}

}  // namespace

SnapshotSequence parse_snapshot_stream(std::istream& in, std::string_view source_name) {
  return parse_stream_impl(in, std::string(source_name));
}

SnapshotSequence load_snapshots(const std::filesystem::path& source) {
  if (std::filesystem::is_directory(source)) return load_directory(source);
  std::ifstream in(source);
  if (!in) throw ParseError(source.string(), 0, "cannot open file");
  return parse_stream_impl(in, source.string());
}

void write_snapshot_file(const std::filesystem::path& path, const SnapshotSequence& seq) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  char buf[64];
  for (const auto& g : seq.snapshots) {
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
      for (const auto& nb : g.neighbors(u)) {
        if (nb.node <= u) continue;
        std::snprintf(buf, sizeof(buf), "%.17g", nb.weight);
        out << g.t() << ' ' << seq.universe.name(g.node_id(u)) << ' '
            << seq.universe.name(g.node_id(nb.node)) << ' ' << buf << '\n';
      }
    }
  }
}

}  // namespace estranet
