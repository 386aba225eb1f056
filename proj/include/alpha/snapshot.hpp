#pragma once

#include <filesystem>
#include <iosfwd>

#include "alpha/graph.hpp"

namespace alpha {

/// Graph snapshot layout (JSON):
///   { "catalog_version": "...",
///     "nodes": [ { "id": 89, "kind": "Base", "name": "..." }, ... ],
///     "edges": [ [parent_id, child_id], ... ] }
void save_snapshot(const CweGraph& g, std::ostream& out);
void save_snapshot_file(const CweGraph& g, const std::filesystem::path& path);

CweGraph load_snapshot(std::istream& in);
CweGraph load_snapshot_file(const std::filesystem::path& path);

}  // namespace alpha
