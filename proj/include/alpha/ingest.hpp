#pragma once

#include <filesystem>
#include <vector>

#include "alpha/parsers.hpp"

namespace alpha {

/// One LLM transcript per sample: <dir>/<sample_id>.txt.
std::vector<PredictionRecord> load_llm_run_dir(const std::filesystem::path& dir,
                                               const std::string& source_id,
                                               int run_id);

std::vector<PredictionRecord> tool_parse_to_records(const ToolParse& parse,
                                                    const std::string& source_id,
                                                    int run_id, SourceKind kind);

/// Loads a prediction source directory, returning one record set per run.
/// Layouts, detected in this order:
///   - run subdirectories (numeric names preferred) of .txt transcripts
///   - *.sarif / *.json report files, one run per file (sniffed by content:
///     a "runs" array means SARIF, a "results" array means Semgrep)
///   - loose .txt transcripts, treated as a single run
std::vector<std::vector<PredictionRecord>> load_prediction_source(
    const std::filesystem::path& dir, const std::string& source_id);

}  // namespace alpha
