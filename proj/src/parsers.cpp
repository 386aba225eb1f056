#include "alpha/parsers.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>
#include <regex>
#include <sstream>

namespace alpha {

using nlohmann::json;

std::string_view to_string(SelectionStrategy s) {
    return s == SelectionStrategy::Confidence ? "confidence" : "any-match";
}

std::optional<SelectionStrategy> parse_strategy(std::string_view s) {
    if (s == "confidence") return SelectionStrategy::Confidence;
    if (s == "any-match" || s == "anymatch") return SelectionStrategy::AnyMatch;
    return std::nullopt;
}

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t len;
        if (c < 0x80) len = 1;
        else if ((c & 0xE0) == 0xC0) len = 2;
        else if ((c & 0xF0) == 0xE0) len = 3;
        else if ((c & 0xF8) == 0xF0) len = 4;
        else return false;
        if (i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k)
            if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
        i += len;
    }
    return true;
}

// Matches "CWE: CWE-89" and "CWE: None"; the CWE tokens are
// case-insensitive and whitespace around the colon is tolerated.
const std::regex kCweToken(R"(cwe\s*:\s*(?:cwe-?\s?(\d+)|(none)))",
                           std::regex::icase);

void scan_region(std::string_view region, LlmParse& out) {
    auto begin = std::cregex_iterator(region.data(), region.data() + region.size(),
                                      kCweToken);
    for (auto it = begin; it != std::cregex_iterator(); ++it) {
        const std::cmatch& m = *it;
        if (m[2].matched) {
            out.none_asserted = true;
        } else if (auto id = parse_cwe_id(m[1].str())) {
            out.predicted.push_back(*id);
        } else {
            out.diagnostics.push_back("unparseable CWE token: " + m[0].str());
        }
    }
}

int precision_tier(std::string_view precision) {
    if (precision == "very-high") return 3;
    if (precision == "high") return 2;
    if (precision == "medium") return 1;
    if (precision == "low") return 0;
    return -1;
}

std::string path_stem(std::string_view uri) {
    auto slash = uri.find_last_of("/\\");
    if (slash != std::string_view::npos) uri.remove_prefix(slash + 1);
    auto dot = uri.rfind('.');
    if (dot != std::string_view::npos && dot > 0) uri = uri.substr(0, dot);
    return std::string(uri);
}

double severity_of(const json& props) {
    if (!props.contains("security-severity")) return -1.0;
    const auto& s = props["security-severity"];
    if (s.is_number()) return s.get<double>();
    if (s.is_string()) {
        try {
            return std::stod(s.get<std::string>());
        } catch (...) {
            return -1.0;
        }
    }
    return -1.0;
}

}  // namespace

LlmParse parse_llm_response(std::string_view text) {
    LlmParse out;
    if (!valid_utf8(text))
        out.diagnostics.push_back("invalid UTF-8 bytes in response");

    // The prompt makes the Findings Summary section authoritative; scan
    // after its last occurrence first, then fall back to the whole text.
    const std::string lowered = lowercase(text);
    const auto heading = lowered.rfind("findings summary");
    if (heading != std::string::npos)
        scan_region(text.substr(heading), out);
    if (out.predicted.empty() && !out.none_asserted)
        scan_region(text, out);
    if (out.predicted.empty() && !out.none_asserted)
        out.diagnostics.push_back("format-violation: no CWE token found");
    if (out.none_asserted && !out.predicted.empty()) {
        // A concrete CWE outranks a stray "CWE: None".
        out.none_asserted = false;
        out.diagnostics.push_back("both 'CWE: None' and a CWE id reported");
    }
    return out;
}

ToolParse parse_sarif(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("SARIF parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("runs") || !doc["runs"].is_array())
        throw ParseError("SARIF schema violation: missing runs array");

    ToolParse out;
    for (const auto& run : doc["runs"]) {
        // Rule id -> (cwe list, tier, severity) from the driver metadata.
        struct RuleInfo {
            std::vector<CweId> cwes;
            int tier = -1;
            double severity = -1.0;
        };
        std::map<std::string, RuleInfo> rules;
        if (run.contains("tool") && run["tool"].contains("driver") &&
            run["tool"]["driver"].contains("rules")) {
            for (const auto& rule : run["tool"]["driver"]["rules"]) {
                if (!rule.contains("id")) continue;
                RuleInfo info;
                if (rule.contains("properties")) {
                    const auto& props = rule["properties"];
                    info.tier =
                        precision_tier(props.value("precision", std::string()));
                    info.severity = severity_of(props);
                    for (const auto& tag :
                         props.value("tags", std::vector<std::string>{})) {
                        constexpr std::string_view prefix = "external/cwe/cwe-";
                        const std::string low = lowercase(tag);
                        if (low.rfind(prefix, 0) != 0) continue;
                        if (auto id = parse_cwe_id(low.substr(prefix.size())))
                            info.cwes.push_back(*id);
                    }
                    if (info.cwes.empty() && props.contains("cwe")) {
                        if (auto id =
                                parse_cwe_id(props["cwe"].get<std::string>()))
                            info.cwes.push_back(*id);
                    }
                }
                rules[rule["id"].get<std::string>()] = std::move(info);
            }
        }

        int order = 0;
        for (const auto& result : run.value("results", json::array())) {
            std::string sample;
            if (result.contains("locations") && !result["locations"].empty()) {
                const auto& loc = result["locations"][0];
                if (loc.contains("physicalLocation") &&
                    loc["physicalLocation"].contains("artifactLocation"))
                    sample = path_stem(loc["physicalLocation"]["artifactLocation"]
                                           .value("uri", std::string()));
            }
            if (sample.empty()) {
                out.diagnostics.push_back("SARIF result without artifact location");
                continue;
            }
            const std::string rule_id = result.value("ruleId", std::string());
            auto it = rules.find(rule_id);
            if (it == rules.end() || it->second.cwes.empty()) {
                ++out.tagless_findings;
                out.diagnostics.push_back("result with no CWE tag (rule '" +
                                          rule_id + "') on sample " + sample);
                continue;
            }
            for (CweId cwe : it->second.cwes) {
                out.by_sample[sample].push_back(
                    {cwe, it->second.tier, it->second.severity, order++});
            }
        }
    }
    return out;
}

ToolParse parse_semgrep(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("Semgrep parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("results") || !doc["results"].is_array())
        throw ParseError("Semgrep schema violation: missing results array");

    ToolParse out;
    int order = 0;
    for (const auto& result : doc["results"]) {
        const std::string sample = path_stem(result.value("path", std::string()));
        if (sample.empty()) {
            out.diagnostics.push_back("semgrep finding without path");
            continue;
        }
        std::vector<std::string> cwe_strings;
        if (result.contains("extra") && result["extra"].contains("metadata") &&
            result["extra"]["metadata"].contains("cwe")) {
            const auto& cwe = result["extra"]["metadata"]["cwe"];
            if (cwe.is_string()) {
                cwe_strings.push_back(cwe.get<std::string>());
            } else if (cwe.is_array()) {
                for (const auto& s : cwe)
                    if (s.is_string()) cwe_strings.push_back(s.get<std::string>());
            }
        }
        if (cwe_strings.empty()) {
            ++out.tagless_findings;
            out.diagnostics.push_back("finding without cwe metadata on sample " +
                                      sample);
            continue;
        }
        bool any = false;
        for (const auto& s : cwe_strings) {
            // Strings look like "CWE-89: SQL Injection".
            const auto colon = s.find(':');
            const std::string token =
                colon == std::string::npos ? s : s.substr(0, colon);
            auto id = parse_cwe_id(token);
            if (!id) {
                out.diagnostics.push_back("malformed cwe string '" + s +
                                          "' on sample " + sample);
                continue;
            }
            out.by_sample[sample].push_back({*id, -1, -1.0, order++});
            any = true;
        }
        if (!any) ++out.tagless_findings;
    }
    return out;
}

ToolParse parse_sarif_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_sarif(in);
}

ToolParse parse_semgrep_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_semgrep(in);
}

std::optional<CweId> select_prediction(const PredictionRecord& record,
                                       SelectionStrategy strategy, CweId truth) {
    if (record.findings.empty()) return std::nullopt;

    if (strategy == SelectionStrategy::AnyMatch) {
        for (const Finding& f : record.findings)
            if (f.cwe == truth) return truth;
    }

    if (record.kind == SourceKind::LlmTranscript)
        return record.findings.back().cwe;  // final reported CWE

    const Finding* best = &record.findings.front();
    for (const Finding& f : record.findings) {
        if (f.precision_tier != best->precision_tier) {
            if (f.precision_tier > best->precision_tier) best = &f;
        } else if (f.security_severity != best->security_severity) {
            if (f.security_severity > best->security_severity) best = &f;
        } else if (f.order < best->order) {
            best = &f;
        }
    }
    return best->cwe;
}

GroundTruthManifest load_manifest(std::istream& in,
                                  const std::string& dataset_name) {
    GroundTruthManifest manifest;
    manifest.dataset_name = dataset_name;

    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string data = buffer.str();

    auto insert = [&](const std::string& sample, const std::string& label,
                      const std::string& where) {
        auto id = parse_cwe_id(label);
        if (!id)
            throw ParseError("manifest: unparseable CWE label '" + label +
                             "' at " + where);
        if (!manifest.entries.emplace(sample, *id).second)
            throw ParseError("manifest: duplicate sample id '" + sample + "'");
    };

    const auto first = data.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && data[first] == '{') {
        json doc;
        try {
            doc = json::parse(data);
        } catch (const json::exception& e) {
            throw ParseError(std::string("manifest JSON parse error: ") + e.what());
        }
        for (const auto& [key, value] : doc.items()) {
            std::string label = value.is_number_unsigned()
                                    ? std::to_string(value.get<std::uint64_t>())
                                    : value.get<std::string>();
            insert(key, label, "entry '" + key + "'");
        }
        return manifest;
    }

    std::istringstream lines(data);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("manifest: missing comma at line " +
                             std::to_string(lineno));
        std::string sample = line.substr(0, comma);
        std::string label = line.substr(comma + 1);
        if (lineno == 1 && lowercase(sample) == "sample_id") continue;  // header
        insert(sample, label, "line " + std::to_string(lineno));
    }
    return manifest;
}

GroundTruthManifest load_manifest_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return load_manifest(in, path.stem().string());
}

std::string record_to_json(const PredictionRecord& record) {
    json findings = json::array();
    for (const Finding& f : record.findings) {
        findings.push_back({{"cwe", f.cwe.value},
                            {"precision_tier", f.precision_tier},
                            {"security_severity", f.security_severity},
                            {"order", f.order}});
    }
    json doc = {{"sample_id", record.sample_id},
                {"source_id", record.source_id},
                {"run_id", record.run_id},
                {"kind", record.kind == SourceKind::LlmTranscript ? "llm" : "tool"},
                {"findings", findings},
                {"none_asserted", record.none_asserted},
                {"raw_excerpt", record.raw_excerpt},
                {"diagnostics", record.diagnostics}};
    return doc.dump();
}

PredictionRecord record_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("record parse error: ") + e.what());
    }
    PredictionRecord record;
    record.sample_id = doc.value("sample_id", "");
    record.source_id = doc.value("source_id", "");
    record.run_id = doc.value("run_id", 1);
    record.kind = doc.value("kind", "tool") == "llm" ? SourceKind::LlmTranscript
                                                    : SourceKind::ToolFindings;
    for (const auto& f : doc.value("findings", json::array())) {
        record.findings.push_back({CweId(f.at("cwe").get<std::uint32_t>()),
                                   f.value("precision_tier", -1),
                                   f.value("security_severity", -1.0),
                                   f.value("order", 0)});
    }
    record.none_asserted = doc.value("none_asserted", false);
    record.raw_excerpt = doc.value("raw_excerpt", "");
    record.diagnostics =
        doc.value("diagnostics", std::vector<std::string>{});
    return record;
}

}  // namespace alpha
