#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "alpha/records.hpp"

namespace alpha {

/// Result of scanning one LLM transcript. Never throws on arbitrary text;
/// unparseable responses come back empty with a format-violation diagnostic.
struct LlmParse {
    std::vector<CweId> predicted;  // in order of appearance
    bool none_asserted = false;
    std::vector<std::string> diagnostics;
};

LlmParse parse_llm_response(std::string_view text);

/// Findings per sample extracted from one tool report, plus counters for
/// results that carried no CWE tag.
struct ToolParse {
    std::map<std::string, std::vector<Finding>> by_sample;
    int tagless_findings = 0;
    std::vector<std::string> diagnostics;
};

/// SARIF 2.1.0 (CodeQL-style): CWE ids from rule tags "external/cwe/cwe-<n>",
/// precision and security-severity kept as rank metadata. The sample id is
/// the stem of the result's artifact location.
ToolParse parse_sarif(std::istream& in);
ToolParse parse_sarif_file(const std::filesystem::path& path);

/// Semgrep results JSON: CWE ids from each finding's metadata "cwe" field
/// (strings like "CWE-89: ..."); first listed CWE is the finding's primary.
ToolParse parse_semgrep(std::istream& in);
ToolParse parse_semgrep_file(const std::filesystem::path& path);

/// Single-CWE choice for scoring. Confidence picks the highest-ranked (or
/// first-reported) finding; AnyMatch returns the truth when it appears
/// anywhere in the finding set. LLM records use the final reported CWE.
std::optional<CweId> select_prediction(const PredictionRecord& record,
                                       SelectionStrategy strategy, CweId truth);

/// Ground-truth manifest from CSV ("sample_id,cwe" rows, optional header)
/// or a JSON object mapping sample ids to labels.
GroundTruthManifest load_manifest(std::istream& in, const std::string& dataset_name);
GroundTruthManifest load_manifest_file(const std::filesystem::path& path);

/// JSON round-trip for prediction records.
std::string record_to_json(const PredictionRecord& record);
PredictionRecord record_from_json(const std::string& text);

}  // namespace alpha
