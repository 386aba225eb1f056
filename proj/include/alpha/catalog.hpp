#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "alpha/graph.hpp"

namespace alpha {

/// Loads a MITRE CWE catalog export ("Comprehensive CWE Dictionary" XML).
///
/// With weakness_only set (the default), the result contains only the six
/// weakness kinds and their ChildOf edges. With it cleared, View and
/// Category nodes are retained and their membership relations become
/// parent -> member edges alongside the ChildOf edges.
CweGraph load_catalog(std::istream& xml, bool weakness_only = true);

/// File variant; transparently decompresses gzip input (by magic bytes).
CweGraph load_catalog_file(const std::filesystem::path& path,
                           bool weakness_only = true);

/// Reads a whole file into memory, gunzipping when the gzip magic is present.
std::string read_file_maybe_gz(const std::filesystem::path& path);

}  // namespace alpha
