#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "estranet/graph.hpp"

namespace estranet {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Read an evolving network. `source` is either a snapshot file with
/// `<t> <u> <v> [w]` records (timestamps nondecreasing) or a directory of
/// `<t>.edges` files with `<u> <v> [w]` records. Lines starting with `#`
/// are ignored, missing weights default to 1, duplicate pairs within a
/// snapshot are summed.
SnapshotSequence load_snapshots(const std::filesystem::path& source);

/// Snapshot-file grammar over an arbitrary stream.
SnapshotSequence parse_snapshot_stream(std::istream& in, std::string_view source_name = "<stream>");

void write_snapshot_file(const std::filesystem::path& path, const SnapshotSequence& seq);

}  // namespace estranet
