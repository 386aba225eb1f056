// Shared fixtures: a small taxonomy mirroring the CWE-707 -> CWE-89 chain,
// random DAG generation, and independent oracles (BFS / transitive closure)
// used to cross-check the graph implementation.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alpha/graph.hpp"

namespace fixtures {

using alpha::CweGraph;
using alpha::CweId;
using alpha::CweNode;
using alpha::WeaknessKind;

// 707(Pillar) -> 74(Class) -> {943(Class) -> 89(Base) -> 564(Variant),
// 79(Base)}, plus a disconnected component 500(Pillar) -> 501(Base).
inline CweGraph mini_graph() {
    std::vector<CweNode> nodes = {
        {CweId(707), WeaknessKind::Pillar, "Improper Neutralization"},
        {CweId(74), WeaknessKind::Class, "Injection"},
        {CweId(943), WeaknessKind::Class, "Improper Neutralization in Query Logic"},
        {CweId(89), WeaknessKind::Base, "SQL Injection"},
        {CweId(564), WeaknessKind::Variant, "SQL Injection: Hibernate"},
        {CweId(79), WeaknessKind::Base, "Cross-site Scripting"},
        {CweId(500), WeaknessKind::Pillar, "Isolated Pillar"},
        {CweId(501), WeaknessKind::Base, "Isolated Base"},
    };
    std::vector<std::pair<CweId, CweId>> edges = {
        {CweId(707), CweId(74)}, {CweId(74), CweId(943)},
        {CweId(943), CweId(89)}, {CweId(89), CweId(564)},
        {CweId(74), CweId(79)},  {CweId(500), CweId(501)},
    };
    return CweGraph(std::move(nodes), std::move(edges), "fixture-1");
}

struct RawDag {
    std::vector<CweNode> nodes;
    std::vector<std::pair<CweId, CweId>> edges;
};

// Random DAG over ids 1..n; edges only run from lower to higher id, which
// guarantees acyclicity by construction.
inline RawDag random_dag(std::mt19937& rng, int n, double edge_prob = 0.08) {
    RawDag dag;
    const WeaknessKind kinds[] = {WeaknessKind::Pillar, WeaknessKind::Class,
                                  WeaknessKind::Base, WeaknessKind::Variant,
                                  WeaknessKind::Compound, WeaknessKind::Chain};
    std::uniform_int_distribution<int> kind_pick(0, 5);
    std::bernoulli_distribution edge_pick(edge_prob);
    for (int i = 1; i <= n; ++i)
        dag.nodes.push_back({CweId(static_cast<std::uint32_t>(i)),
                             kinds[kind_pick(rng)], "node"});
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (edge_pick(rng))
                dag.edges.emplace_back(CweId(static_cast<std::uint32_t>(i)),
                                       CweId(static_cast<std::uint32_t>(j)));
    return dag;
}

// Plain BFS over the undirected adjacency, written against the raw edge
// list so it shares nothing with CweGraph internals.
inline std::optional<int> bfs_oracle(const RawDag& dag, CweId from, CweId to) {
    std::map<std::uint32_t, std::vector<std::uint32_t>> adj;
    for (const auto& [p, c] : dag.edges) {
        adj[p.value].push_back(c.value);
        adj[c.value].push_back(p.value);
    }
    std::map<std::uint32_t, int> dist;
    std::vector<std::uint32_t> frontier = {from.value};
    dist[from.value] = 0;
    while (!frontier.empty()) {
        std::vector<std::uint32_t> next;
        for (auto u : frontier) {
            for (auto v : adj[u]) {
                if (dist.count(v)) continue;
                dist[v] = dist[u] + 1;
                next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    auto it = dist.find(to.value);
    if (it == dist.end()) return std::nullopt;
    return it->second;
}

// Directed reachability by repeated relaxation over the edge list.
inline bool reachable_oracle(const RawDag& dag, CweId from, CweId to) {
    std::set<std::uint32_t> reached = {from.value};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [p, c] : dag.edges) {
            if (reached.count(p.value) && !reached.count(c.value)) {
                reached.insert(c.value);
                grew = true;
            }
        }
    }
    return reached.count(to.value) > 0;
}

// Catalog XML matching mini_graph, with an optional View/Category section
// so the filter can be exercised in both directions.
inline std::string mini_catalog_xml(bool with_organizational = true) {
    std::ostringstream xml;
    xml << R"(<?xml version="1.0"?>)"
        << "\n<Weakness_Catalog Version=\"fixture-1\">\n<Weaknesses>\n";
    auto weakness = [&](int id, const char* name, const char* abstraction,
                        std::vector<int> parents) {
        xml << "  <Weakness ID=\"" << id << "\" Name=\"" << name
            << "\" Abstraction=\"" << abstraction << "\">\n";
        if (!parents.empty()) {
            xml << "    <Related_Weaknesses>\n";
            for (int p : parents)
                xml << "      <Related_Weakness Nature=\"ChildOf\" CWE_ID=\"" << p
                    << "\" View_ID=\"1000\"/>\n";
            xml << "    </Related_Weaknesses>\n";
        }
        xml << "  </Weakness>\n";
    };
    weakness(707, "Improper Neutralization", "Pillar", {});
    weakness(74, "Injection", "Class", {707});
    weakness(943, "Improper Neutralization in Query Logic", "Class", {74});
    weakness(89, "SQL Injection", "Base", {943});
    weakness(564, "SQL Injection: Hibernate", "Variant", {89});
    weakness(79, "Cross-site Scripting", "Base", {74});
    weakness(500, "Isolated Pillar", "Pillar", {});
    weakness(501, "Isolated Base", "Base", {500});
    xml << "</Weaknesses>\n";
    if (with_organizational) {
        xml << "<Categories>\n"
               "  <Category ID=\"137\" Name=\"Data Neutralization Issues\">\n"
               "    <Relationships>\n"
               "      <Has_Member CWE_ID=\"89\" View_ID=\"699\"/>\n"
               "      <Has_Member CWE_ID=\"79\" View_ID=\"699\"/>\n"
               "    </Relationships>\n"
               "  </Category>\n"
               "</Categories>\n"
               "<Views>\n"
               "  <View ID=\"1000\" Name=\"Research Concepts\" Type=\"Graph\">\n"
               "    <Members>\n"
               "      <Has_Member CWE_ID=\"707\" View_ID=\"1000\"/>\n"
               "      <Has_Member CWE_ID=\"500\" View_ID=\"1000\"/>\n"
               "    </Members>\n"
               "  </View>\n"
               "  <View ID=\"699\" Name=\"Development Concepts\" Type=\"Graph\">\n"
               "    <Members>\n"
               "      <Has_Member CWE_ID=\"137\" View_ID=\"699\"/>\n"
               "    </Members>\n"
               "  </View>\n"
               "</Views>\n";
    }
    xml << "</Weakness_Catalog>\n";
    return xml.str();
}

// Large synthetic catalog: a connected forest-of-one-root DAG with extra
// cross edges, plus organizational nodes, sized like the real taxonomy.
inline std::string synthetic_catalog_xml(int n_weaknesses, unsigned seed) {
    std::mt19937 rng(seed);
    const char* abstractions[] = {"Pillar", "Class", "Base", "Variant", "Compound"};
    std::ostringstream xml;
    xml << "<Weakness_Catalog Version=\"synthetic-" << seed << "\">\n<Weaknesses>\n";
    for (int i = 1; i <= n_weaknesses; ++i) {
        const char* abstraction =
            i == 1 ? "Pillar" : abstractions[std::min(4, (i * 7) % 5)];
        xml << "  <Weakness ID=\"" << i << "\" Name=\"W" << i
            << "\" Abstraction=\"" << abstraction << "\">\n";
        if (i > 1) {
            std::uniform_int_distribution<int> parent_pick(1, i - 1);
            std::set<int> parents = {parent_pick(rng)};
            if (std::bernoulli_distribution(0.2)(rng))
                parents.insert(parent_pick(rng));  // multi-parent nodes
            xml << "    <Related_Weaknesses>\n";
            for (int p : parents)
                xml << "      <Related_Weakness Nature=\"ChildOf\" CWE_ID=\"" << p
                    << "\" View_ID=\"1000\"/>\n";
            xml << "    </Related_Weaknesses>\n";
        }
        xml << "  </Weakness>\n";
    }
    xml << "</Weaknesses>\n<Categories>\n";
    for (int c = 0; c < 30; ++c) {
        xml << "  <Category ID=\"" << (n_weaknesses + 100 + c) << "\" Name=\"C"
            << c << "\">\n    <Relationships>\n";
        std::uniform_int_distribution<int> member_pick(1, n_weaknesses);
        for (int m = 0; m < 10; ++m)
            xml << "      <Has_Member CWE_ID=\"" << member_pick(rng)
                << "\" View_ID=\"699\"/>\n";
        xml << "    </Relationships>\n  </Category>\n";
    }
    xml << "</Categories>\n<Views>\n";
    for (int v = 0; v < 5; ++v) {
        xml << "  <View ID=\"" << (n_weaknesses + 200 + v) << "\" Name=\"V" << v
            << "\" Type=\"Graph\">\n    <Members>\n";
        for (int c = 0; c < 6; ++c)
            xml << "      <Has_Member CWE_ID=\"" << (n_weaknesses + 100 + (v * 6 + c))
                << "\" View_ID=\"" << (n_weaknesses + 200 + v) << "\"/>\n";
        xml << "    </Members>\n  </View>\n";
    }
    xml << "</Views>\n</Weakness_Catalog>\n";
    return xml.str();
}

}  // namespace fixtures
