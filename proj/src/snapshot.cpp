#include "alpha/snapshot.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <utility>
#include <vector>

namespace alpha {

using nlohmann::json;

void save_snapshot(const CweGraph& g, std::ostream& out) {
    json nodes = json::array();
    for (const CweNode& n : g.nodes()) {
        nodes.push_back({{"id", n.id.value},
                         {"kind", to_string(n.kind)},
                         {"name", n.name}});
    }
    json edges = json::array();
    for (const CweNode& n : g.nodes())
        for (CweId c : g.children(n.id))
            edges.push_back({n.id.value, c.value});
    json doc = {{"catalog_version", g.catalog_version()},
                {"nodes", nodes},
                {"edges", edges}};
    out << doc.dump(2) << "\n";
}

void save_snapshot_file(const CweGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    save_snapshot(g, out);
}

CweGraph load_snapshot(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("snapshot parse error: ") + e.what());
    }
    std::vector<CweNode> nodes;
    std::vector<std::pair<CweId, CweId>> edges;
    try {
        for (const auto& n : doc.at("nodes")) {
            auto kind = parse_weakness_kind(n.at("kind").get<std::string>());
            if (!kind)
                throw ParseError("snapshot: unknown kind '" +
                                 n.at("kind").get<std::string>() + "'");
            nodes.push_back({CweId(n.at("id").get<std::uint32_t>()), *kind,
                             n.value("name", "")});
        }
        for (const auto& e : doc.at("edges"))
            edges.emplace_back(CweId(e.at(0).get<std::uint32_t>()),
                               CweId(e.at(1).get<std::uint32_t>()));
        return CweGraph(std::move(nodes), std::move(edges),
                        doc.value("catalog_version", "unknown"));
    } catch (const json::exception& e) {
        throw ParseError(std::string("snapshot layout error: ") + e.what());
    }
}

CweGraph load_snapshot_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return load_snapshot(in);
}

}  // namespace alpha
