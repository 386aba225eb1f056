#include "alpha/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

#include "alpha/parsers.hpp"

namespace alpha {

using nlohmann::json;

std::string_view to_string(AgreementClass a) {
    switch (a) {
        case AgreementClass::Perfect: return "perfect";
        case AgreementClass::Majority: return "majority";
        case AgreementClass::None: return "none";
    }
    return "?";
}

namespace {

std::map<std::string, const PredictionRecord*> index_by_sample(
    const std::vector<PredictionRecord>& predictions) {
    std::map<std::string, const PredictionRecord*> by_sample;
    for (const PredictionRecord& record : predictions) {
        if (!by_sample.emplace(record.sample_id, &record).second)
            throw ConfigError("duplicate prediction record for sample '" +
                              record.sample_id + "' within one run");
    }
    return by_sample;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

}  // namespace

EvaluationReport evaluate_run(const std::vector<PredictionRecord>& predictions,
                              const GroundTruthManifest& manifest,
                              const CweGraph& g, const PenaltyConfig& cfg,
                              SelectionStrategy strategy) {
    cfg.validate();

    std::string bad_labels;
    for (const auto& [sample, truth] : manifest.entries) {
        if (!g.contains(truth)) {
            if (!bad_labels.empty()) bad_labels += ", ";
            bad_labels += sample + " (" + truth.str() + ")";
        }
    }
    if (!bad_labels.empty())
        throw LookupError("ground-truth labels not in graph: " + bad_labels);

    const auto by_sample = index_by_sample(predictions);

    EvaluationReport report;
    report.strategy = strategy;
    report.dataset_name = manifest.dataset_name;
    report.config = cfg;
    if (!predictions.empty()) {
        report.source_id = predictions.front().source_id;
        report.run_id = predictions.front().run_id;
    }

    std::size_t detected = 0, truth_in_findings = 0;
    for (const auto& [sample, truth] : manifest.entries) {
        SamplePenalty sp;
        sp.sample_id = sample;
        auto it = by_sample.find(sample);
        if (it != by_sample.end()) {
            const PredictionRecord& record = *it->second;
            sp.selected = select_prediction(record, strategy, truth);
            if (record.has_prediction()) {
                ++detected;
                if (std::any_of(record.findings.begin(), record.findings.end(),
                                [&](const Finding& f) { return f.cwe == truth; }))
                    ++truth_in_findings;
            }
        }
        sp.result = penalty(g, sp.selected, truth, cfg);
        report.total_penalty += sp.result.penalty;
        report.per_sample.push_back(std::move(sp));
    }

    report.n_samples = manifest.entries.size();
    if (report.n_samples > 0) {
        report.mean_penalty =
            report.total_penalty / static_cast<double>(report.n_samples);
        report.detection_coverage =
            static_cast<double>(detected) / static_cast<double>(report.n_samples);
    }
    report.precision_when_detected =
        detected > 0 ? static_cast<double>(truth_in_findings) /
                           static_cast<double>(detected)
                     : 0.0;
    return report;
}

ConsistencyReport consistency(
    const std::vector<std::vector<PredictionRecord>>& runs,
    const GroundTruthManifest& manifest, SelectionStrategy strategy) {
    if (runs.size() < 2)
        throw ConfigError("consistency requires at least 2 runs");

    std::vector<std::map<std::string, const PredictionRecord*>> indexed;
    for (const auto& run : runs) indexed.push_back(index_by_sample(run));

    for (std::size_t r = 1; r < indexed.size(); ++r) {
        std::set<std::string> a, b;
        for (const auto& [k, v] : indexed[0]) a.insert(k);
        for (const auto& [k, v] : indexed[r]) b.insert(k);
        if (a != b) {
            std::string diff;
            std::set<std::string> sym;
            std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                          std::inserter(sym, sym.end()));
            for (const auto& s : sym) {
                if (!diff.empty()) diff += ", ";
                diff += s;
            }
            throw ConfigError("runs cover different sample sets; difference: " +
                              diff);
        }
    }

    ConsistencyReport report;
    report.n_runs = runs.size();
    report.n_samples = manifest.entries.size();
    if (!runs.front().empty())
        report.source_id = runs.front().front().source_id;

    std::size_t perfect = 0, majority = 0;
    for (const auto& [sample, truth] : manifest.entries) {
        std::vector<std::optional<CweId>> selections;
        for (const auto& idx : indexed) {
            auto it = idx.find(sample);
            selections.push_back(it == idx.end()
                                     ? std::nullopt
                                     : select_prediction(*it->second, strategy,
                                                         truth));
        }

        const bool all_equal = std::all_of(
            selections.begin(), selections.end(),
            [&](const auto& s) { return s == selections.front(); });
        bool two_concur = false;
        for (std::size_t i = 0; i < selections.size() && !two_concur; ++i)
            for (std::size_t j = i + 1; j < selections.size(); ++j)
                if (selections[i] == selections[j]) {
                    two_concur = true;
                    break;
                }

        AgreementClass cls = AgreementClass::None;
        if (all_equal) {
            cls = AgreementClass::Perfect;
            ++perfect;
            ++majority;
        } else if (two_concur) {
            cls = AgreementClass::Majority;
            ++majority;
        }
        report.per_sample.push_back({sample, cls});
    }

    if (report.n_samples > 0) {
        report.perfect_pct =
            100.0 * static_cast<double>(perfect) / static_cast<double>(report.n_samples);
        report.majority_pct =
            100.0 * static_cast<double>(majority) / static_cast<double>(report.n_samples);
    }
    return report;
}

std::vector<RankingRow> compare_sources(
    const std::vector<EvaluationReport>& reports) {
    std::vector<RankingRow> rows;
    for (const EvaluationReport& r : reports) {
        if (r.dataset_name != reports.front().dataset_name ||
            !(r.config == reports.front().config))
            throw ConfigError(
                "compare_sources: reports mix datasets or penalty configs");
        rows.push_back({r.source_id, r.run_id, r.strategy, r.total_penalty,
                        r.mean_penalty, r.detection_coverage,
                        r.precision_when_detected});
    }
    std::sort(rows.begin(), rows.end(), [](const RankingRow& a, const RankingRow& b) {
        if (a.mean_penalty != b.mean_penalty) return a.mean_penalty < b.mean_penalty;
        return a.source_id < b.source_id;
    });
    return rows;
}

void write_report_json(const EvaluationReport& report, std::ostream& out) {
    json samples = json::array();
    for (const SamplePenalty& sp : report.per_sample) {
        json entry = {{"sample_id", sp.sample_id},
                      {"penalty", sp.result.penalty},
                      {"distance", sp.result.distance},
                      {"multiplier", sp.result.multiplier},
                      {"direction", to_string(sp.result.direction)}};
        if (sp.selected) entry["selected"] = sp.selected->str();
        samples.push_back(std::move(entry));
    }
    json doc = {{"source_id", report.source_id},
                {"run_id", report.run_id},
                {"strategy", to_string(report.strategy)},
                {"dataset", report.dataset_name},
                {"n_samples", report.n_samples},
                {"total_penalty", report.total_penalty},
                {"mean_penalty", report.mean_penalty},
                {"detection_coverage", report.detection_coverage},
                {"precision_when_detected", report.precision_when_detected},
                {"config",
                 {{"alpha_up", report.config.alpha_up},
                  {"alpha_lateral", report.config.alpha_lateral},
                  {"alpha_min", report.config.alpha_min},
                  {"alpha_oog", report.config.alpha_oog},
                  {"d_oog", report.config.d_oog}}},
                {"per_sample", samples}};
    out << doc.dump(2) << "\n";
}

void write_report_csv(const EvaluationReport& report, std::ostream& out) {
    out << "sample_id,selected,direction,distance,multiplier,penalty\n";
    for (const SamplePenalty& sp : report.per_sample) {
        out << sp.sample_id << "," << (sp.selected ? sp.selected->str() : "")
            << "," << to_string(sp.result.direction) << "," << sp.result.distance
            << "," << fixed(sp.result.multiplier, 4) << ","
            << fixed(sp.result.penalty, 4) << "\n";
    }
}

void write_consistency_json(const ConsistencyReport& report, std::ostream& out) {
    json samples = json::array();
    for (const SampleAgreement& sa : report.per_sample)
        samples.push_back(
            {{"sample_id", sa.sample_id}, {"agreement", to_string(sa.agreement)}});
    json doc = {{"source_id", report.source_id},
                {"n_runs", report.n_runs},
                {"n_samples", report.n_samples},
                {"perfect_pct", report.perfect_pct},
                {"majority_pct", report.majority_pct},
                {"per_sample", samples}};
    out << doc.dump(2) << "\n";
}

void write_ranking_csv(const std::vector<RankingRow>& rows, std::ostream& out) {
    out << "source_id,strategy,total_penalty,mean_penalty,detection_coverage,"
           "precision_when_detected\n";
    for (const RankingRow& row : rows) {
        out << row.source_id << "," << to_string(row.strategy) << ","
            << fixed(row.total_penalty, 4) << "," << fixed(row.mean_penalty, 4)
            << "," << fixed(row.detection_coverage, 4) << ","
            << fixed(row.precision_when_detected, 4) << "\n";
    }
}

void write_ranking_table(const std::vector<RankingRow>& rows, std::ostream& out) {
    char line[256];
    std::snprintf(line, sizeof line, "%-24s %-11s %10s %8s %9s %10s\n", "source",
                  "strategy", "total", "mean", "coverage", "precision");
    out << line;
    for (const RankingRow& row : rows) {
        std::snprintf(line, sizeof line, "%-24s %-11s %10.1f %8.3f %9.3f %10.3f\n",
                      row.source_id.c_str(),
                      std::string(to_string(row.strategy)).c_str(),
                      row.total_penalty, row.mean_penalty, row.detection_coverage,
                      row.precision_when_detected);
        out << line;
    }
}

}  // namespace alpha
