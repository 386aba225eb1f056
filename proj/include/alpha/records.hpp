#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alpha/cwe.hpp"

namespace alpha {

enum class SelectionStrategy { Confidence, AnyMatch };

std::string_view to_string(SelectionStrategy s);
std::optional<SelectionStrategy> parse_strategy(std::string_view s);

/// Whether a record came from a free-text LLM transcript or a structured
/// tool report. LLM records follow the final-reported-CWE selection rule.
enum class SourceKind { LlmTranscript, ToolFindings };

/// One extracted CWE candidate. Rank metadata drives the Confidence
/// strategy; tier -1 / severity -1 mean "not reported by the tool".
struct Finding {
    CweId cwe;
    int precision_tier = -1;      // very-high=3 > high=2 > medium=1 > low=0
    double security_severity = -1.0;
    int order = 0;                // report order, 0-based
};

/// Predictions of one (sample, source, run) triple.
struct PredictionRecord {
    std::string sample_id;
    std::string source_id;
    int run_id = 1;
    SourceKind kind = SourceKind::ToolFindings;
    std::vector<Finding> findings;     // ordered as reported
    bool none_asserted = false;        // explicit "CWE: None"
    std::string raw_excerpt;
    std::vector<std::string> diagnostics;

    bool has_prediction() const { return !findings.empty(); }
};

struct GroundTruthManifest {
    std::map<std::string, CweId> entries;  // sample_id -> true label
    std::string dataset_name;
};

}  // namespace alpha
