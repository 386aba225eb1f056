#include "alpha/catalog.hpp"

#include <algorithm>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>
#include <zlib.h>

namespace alpha {

namespace {

namespace pt = boost::property_tree;

WeaknessKind kind_of_weakness(const pt::ptree& attrs, const std::string& id_text) {
    // Chains and composites share Abstraction="Compound"; the Structure
    // attribute tells them apart.
    const auto structure = attrs.get<std::string>("Structure", "");
    if (structure == "Chain") return WeaknessKind::Chain;
    const auto abstraction = attrs.get<std::string>("Abstraction", "");
    if (abstraction == "Chain") return WeaknessKind::Chain;
    auto kind = parse_weakness_kind(abstraction);
    if (!kind || !is_weakness_kind(*kind))
        throw ParseError("unknown abstraction '" + abstraction +
                         "' on weakness entry CWE-" + id_text);
    return *kind;
}

std::string gunzip(const std::string& data) {
    z_stream zs{};
    if (inflateInit2(&zs, 15 + 16) != Z_OK)
        throw IoError("zlib: inflateInit2 failed");
    std::string out;
    std::vector<char> buf(1 << 16);
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    int rc;
    do {
        zs.next_out = reinterpret_cast<Bytef*>(buf.data());
        zs.avail_out = static_cast<uInt>(buf.size());
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw IoError("zlib: corrupt gzip stream");
        }
        out.append(buf.data(), buf.size() - zs.avail_out);
    } while (rc != Z_STREAM_END);
    inflateEnd(&zs);
    return out;
}

}  // namespace

std::string read_file_maybe_gz(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string data = ss.str();
    if (data.size() >= 2 && static_cast<unsigned char>(data[0]) == 0x1f &&
        static_cast<unsigned char>(data[1]) == 0x8b)
        return gunzip(data);
    return data;
}

CweGraph load_catalog(std::istream& xml, bool weakness_only) {
    pt::ptree doc;
    try {
        pt::read_xml(xml, doc, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError("catalog XML parse error at line " +
                         std::to_string(e.line()) + ": " + e.message());
    }

    auto catalog = doc.get_child_optional("Weakness_Catalog");
    if (!catalog) throw ParseError("not a CWE catalog: missing Weakness_Catalog root");
    const std::string version =
        catalog->get<std::string>("<xmlattr>.Version", "unknown");

    std::vector<CweNode> nodes;
    std::vector<std::pair<CweId, CweId>> child_of;   // parent -> child
    std::vector<std::pair<CweId, CweId>> member_of;  // container -> member

    if (auto weaknesses = catalog->get_child_optional("Weaknesses")) {
        for (const auto& [tag, entry] : *weaknesses) {
            if (tag != "Weakness") continue;
            const auto& attrs = entry.get_child("<xmlattr>");
            const auto id_text = attrs.get<std::string>("ID");
            CweId id = require_cwe_id(id_text);
            nodes.push_back({id, kind_of_weakness(attrs, id_text),
                             attrs.get<std::string>("Name", "")});
            if (auto rel = entry.get_child_optional("Related_Weaknesses")) {
                for (const auto& [rtag, rw] : *rel) {
                    if (rtag != "Related_Weakness") continue;
                    if (rw.get<std::string>("<xmlattr>.Nature", "") != "ChildOf")
                        continue;
                    CweId parent =
                        require_cwe_id(rw.get<std::string>("<xmlattr>.CWE_ID"));
                    child_of.emplace_back(parent, id);
                }
            }
        }
    }

    auto collect_members = [&](const pt::ptree& entry, CweId container) {
        for (const auto& [tag, sub] : entry) {
            if (tag != "Relationships" && tag != "Members") continue;
            for (const auto& [mtag, m] : sub) {
                if (mtag != "Has_Member") continue;
                CweId member =
                    require_cwe_id(m.get<std::string>("<xmlattr>.CWE_ID"));
                member_of.emplace_back(container, member);
            }
        }
    };

    if (!weakness_only) {
        if (auto categories = catalog->get_child_optional("Categories")) {
            for (const auto& [tag, entry] : *categories) {
                if (tag != "Category") continue;
                CweId id =
                    require_cwe_id(entry.get<std::string>("<xmlattr>.ID"));
                nodes.push_back({id, WeaknessKind::Category,
                                 entry.get<std::string>("<xmlattr>.Name", "")});
                collect_members(entry, id);
            }
        }
        if (auto views = catalog->get_child_optional("Views")) {
            for (const auto& [tag, entry] : *views) {
                if (tag != "View") continue;
                CweId id =
                    require_cwe_id(entry.get<std::string>("<xmlattr>.ID"));
                nodes.push_back({id, WeaknessKind::View,
                                 entry.get<std::string>("<xmlattr>.Name", "")});
                collect_members(entry, id);
            }
        }
    }

    // Keep only edges whose endpoints are retained nodes.
    std::vector<CweId> ids;
    ids.reserve(nodes.size());
    for (const auto& n : nodes) ids.push_back(n.id);
    std::sort(ids.begin(), ids.end());
    auto retained = [&](CweId id) {
        return std::binary_search(ids.begin(), ids.end(), id);
    };

    std::vector<std::pair<CweId, CweId>> edges;
    for (const auto& e : child_of)
        if (retained(e.first) && retained(e.second)) edges.push_back(e);
    for (const auto& e : member_of)
        if (retained(e.first) && retained(e.second)) edges.push_back(e);

    return CweGraph(std::move(nodes), std::move(edges), version);
}

CweGraph load_catalog_file(const std::filesystem::path& path, bool weakness_only) {
    std::string data = read_file_maybe_gz(path);
    std::istringstream in(data);
    try {
        return load_catalog(in, weakness_only);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace alpha
