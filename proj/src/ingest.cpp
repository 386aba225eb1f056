#include "alpha/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace alpha {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<fs::path> sorted_entries(const fs::path& dir,
                                     bool (*want)(const fs::directory_entry&)) {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (want(entry)) out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

enum class ReportFlavor { Sarif, Semgrep };

ReportFlavor sniff_report(const fs::path& path) {
    json doc;
    try {
        std::ifstream in(path);
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": not valid JSON: " + e.what());
    }
    if (doc.is_object() && doc.contains("runs")) return ReportFlavor::Sarif;
    if (doc.is_object() && doc.contains("results")) return ReportFlavor::Semgrep;
    throw ParseError(path.string() +
                     ": unrecognized report format (neither SARIF nor Semgrep)");
}

}  // namespace

std::vector<PredictionRecord> load_llm_run_dir(const fs::path& dir,
                                               const std::string& source_id,
                                               int run_id) {
    std::vector<PredictionRecord> records;
    auto files = sorted_entries(dir, [](const fs::directory_entry& e) {
        return e.is_regular_file() && e.path().extension() == ".txt";
    });
    for (const fs::path& file : files) {
        const std::string text = slurp(file);
        LlmParse parsed = parse_llm_response(text);

        PredictionRecord record;
        record.sample_id = file.stem().string();
        record.source_id = source_id;
        record.run_id = run_id;
        record.kind = SourceKind::LlmTranscript;
        record.none_asserted = parsed.none_asserted;
        record.diagnostics = std::move(parsed.diagnostics);
        record.raw_excerpt = text.substr(0, 200);
        int order = 0;
        for (CweId id : parsed.predicted)
            record.findings.push_back({id, -1, -1.0, order++});
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<PredictionRecord> tool_parse_to_records(const ToolParse& parse,
                                                    const std::string& source_id,
                                                    int run_id, SourceKind kind) {
    std::vector<PredictionRecord> records;
    for (const auto& [sample, findings] : parse.by_sample) {
        PredictionRecord record;
        record.sample_id = sample;
        record.source_id = source_id;
        record.run_id = run_id;
        record.kind = kind;
        record.findings = findings;
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<std::vector<PredictionRecord>> load_prediction_source(
    const fs::path& dir, const std::string& source_id) {
    if (!fs::is_directory(dir))
        throw IoError("prediction directory not found: " + dir.string());

    auto subdirs = sorted_entries(dir, [](const fs::directory_entry& e) {
        return e.is_directory();
    });
    if (!subdirs.empty()) {
        // Prefer numeric run names ("1", "2", ...) for run ids.
        std::vector<std::vector<PredictionRecord>> runs;
        int ordinal = 0;
        for (const fs::path& sub : subdirs) {
            ++ordinal;
            int run_id = ordinal;
            try {
                run_id = std::stoi(sub.filename().string());
            } catch (...) {
            }
            runs.push_back(load_llm_run_dir(sub, source_id, run_id));
        }
        return runs;
    }

    auto reports = sorted_entries(dir, [](const fs::directory_entry& e) {
        if (!e.is_regular_file()) return false;
        const auto ext = e.path().extension();
        return ext == ".sarif" || ext == ".json";
    });
    if (!reports.empty()) {
        std::vector<std::vector<PredictionRecord>> runs;
        int run_id = 0;
        for (const fs::path& file : reports) {
            ++run_id;
            ToolParse parsed = sniff_report(file) == ReportFlavor::Sarif
                                   ? parse_sarif_file(file)
                                   : parse_semgrep_file(file);
            runs.push_back(tool_parse_to_records(parsed, source_id, run_id,
                                                 SourceKind::ToolFindings));
        }
        return runs;
    }

    // Loose transcripts count as a single run; an empty directory is a
    // valid all-NoPrediction source.
    return {load_llm_run_dir(dir, source_id, 1)};
}

}  // namespace alpha
