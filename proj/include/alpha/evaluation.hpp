#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "alpha/penalty.hpp"
#include "alpha/records.hpp"

namespace alpha {

struct SamplePenalty {
    std::string sample_id;
    std::optional<CweId> selected;
    PenaltyResult result;
};

struct EvaluationReport {
    std::string source_id;
    int run_id = 1;
    SelectionStrategy strategy = SelectionStrategy::Confidence;
    std::string dataset_name;
    PenaltyConfig config;
    std::vector<SamplePenalty> per_sample;  // sorted by sample_id
    double total_penalty = 0.0;
    double mean_penalty = 0.0;  // the dataset-level score; lower is better
    std::size_t n_samples = 0;
    double detection_coverage = 0.0;       // samples with >= 1 finding
    double precision_when_detected = 0.0;  // truth anywhere in the finding set
};

/// Scores one (source, run) prediction set against the manifest. Manifest
/// samples without a record are charged the NoPrediction penalty. Throws
/// if any ground-truth label is not a graph node, listing the samples.
EvaluationReport evaluate_run(const std::vector<PredictionRecord>& predictions,
                              const GroundTruthManifest& manifest,
                              const CweGraph& g, const PenaltyConfig& cfg,
                              SelectionStrategy strategy);

enum class AgreementClass { Perfect, Majority, None };

std::string_view to_string(AgreementClass a);

struct SampleAgreement {
    std::string sample_id;
    AgreementClass agreement = AgreementClass::None;
};

struct ConsistencyReport {
    std::string source_id;
    std::size_t n_runs = 0;
    std::size_t n_samples = 0;
    std::vector<SampleAgreement> per_sample;  // sorted by sample_id
    double perfect_pct = 0.0;
    double majority_pct = 0.0;
};

/// Agreement of selected CWEs across runs of one source. An absent
/// selection counts as a value, so three empty runs agree perfectly.
/// Runs must cover identical sample sets; the error lists the difference.
ConsistencyReport consistency(
    const std::vector<std::vector<PredictionRecord>>& runs,
    const GroundTruthManifest& manifest, SelectionStrategy strategy);

struct RankingRow {
    std::string source_id;
    int run_id = 1;
    SelectionStrategy strategy = SelectionStrategy::Confidence;
    double total_penalty = 0.0;
    double mean_penalty = 0.0;
    double detection_coverage = 0.0;
    double precision_when_detected = 0.0;
};

/// Sources sorted ascending by mean penalty (ties: source id). All reports
/// must share dataset and penalty config.
std::vector<RankingRow> compare_sources(const std::vector<EvaluationReport>& reports);

// Serialization. JSON keeps full float precision; the aligned-text table
// rounds penalties to one decimal.
void write_report_json(const EvaluationReport& report, std::ostream& out);
void write_report_csv(const EvaluationReport& report, std::ostream& out);
void write_consistency_json(const ConsistencyReport& report, std::ostream& out);
void write_ranking_csv(const std::vector<RankingRow>& rows, std::ostream& out);
void write_ranking_table(const std::vector<RankingRow>& rows, std::ostream& out);

}  // namespace alpha
