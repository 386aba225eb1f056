#include "alpha/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace alpha {

namespace {

constexpr std::uint32_t kNoComponent = std::numeric_limits<std::uint32_t>::max();

}  // namespace

CweGraph::CweGraph(std::vector<CweNode> nodes,
                   std::vector<std::pair<CweId, CweId>> edges,
                   std::string catalog_version)
    : nodes_(std::move(nodes)), version_(std::move(catalog_version)) {
    std::sort(nodes_.begin(), nodes_.end(),
              [](const CweNode& a, const CweNode& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (nodes_[i - 1].id == nodes_[i].id)
            throw ParseError("duplicate node " + nodes_[i].id.str());
    }

    const std::size_t n = nodes_.size();
    children_.assign(n, {});
    parents_.assign(n, {});

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const auto& [p, c] : edges) {
        if (p == c) throw ParseError("self-loop on " + p.str());
        if (!contains(p))
            throw ParseError("edge references missing node " + p.str());
        if (!contains(c))
            throw ParseError("edge references missing node " + c.str());
        children_[index_of(p)].push_back(static_cast<std::uint32_t>(index_of(c)));
        parents_[index_of(c)].push_back(static_cast<std::uint32_t>(index_of(p)));
    }
    edge_count_ = edges.size();

    // Kahn's algorithm; leftover nodes mean a directed cycle.
    std::vector<std::uint32_t> indeg(n), topo;
    topo.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        indeg[i] = static_cast<std::uint32_t>(parents_[i].size());
    std::deque<std::uint32_t> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push_back(static_cast<std::uint32_t>(i));
    while (!ready.empty()) {
        std::uint32_t u = ready.front();
        ready.pop_front();
        topo.push_back(u);
        for (std::uint32_t v : children_[u])
            if (--indeg[v] == 0) ready.push_back(v);
    }
    if (topo.size() != n) throw ParseError("taxonomy graph contains a directed cycle");

    // Subtree depth and descendant bitsets in reverse topological order.
    const std::size_t words = (n + 63) / 64;
    depth_.assign(n, 0);
    descendants_.assign(n, std::vector<std::uint64_t>(words, 0));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        std::uint32_t u = *it;
        for (std::uint32_t v : children_[u]) {
            depth_[u] = std::max(depth_[u], depth_[v] + 1);
            auto& du = descendants_[u];
            const auto& dv = descendants_[v];
            for (std::size_t w = 0; w < words; ++w) du[w] |= dv[w];
            du[v / 64] |= std::uint64_t(1) << (v % 64);
        }
    }

    // Undirected connected components.
    component_.assign(n, kNoComponent);
    std::uint32_t comp = 0;
    std::deque<std::uint32_t> queue;
    for (std::size_t s = 0; s < n; ++s) {
        if (component_[s] != kNoComponent) continue;
        component_[s] = comp;
        queue.push_back(static_cast<std::uint32_t>(s));
        while (!queue.empty()) {
            std::uint32_t u = queue.front();
            queue.pop_front();
            for (const auto* adj : {&children_[u], &parents_[u]}) {
                for (std::uint32_t v : *adj) {
                    if (component_[v] == kNoComponent) {
                        component_[v] = comp;
                        queue.push_back(v);
                    }
                }
            }
        }
        ++comp;
    }
}

bool CweGraph::contains(CweId id) const {
    auto it = std::lower_bound(
        nodes_.begin(), nodes_.end(), id,
        [](const CweNode& node, CweId key) { return node.id < key; });
    return it != nodes_.end() && it->id == id;
}

std::size_t CweGraph::index_of(CweId id) const {
    auto it = std::lower_bound(
        nodes_.begin(), nodes_.end(), id,
        [](const CweNode& node, CweId key) { return node.id < key; });
    if (it == nodes_.end() || it->id != id)
        throw LookupError("unknown CWE id " + id.str());
    return static_cast<std::size_t>(it - nodes_.begin());
}

const CweNode& CweGraph::node(CweId id) const { return nodes_[index_of(id)]; }

std::vector<CweId> CweGraph::children(CweId id) const {
    std::vector<CweId> out;
    for (std::uint32_t v : children_[index_of(id)]) out.push_back(nodes_[v].id);
    return out;
}

std::vector<CweId> CweGraph::parents(CweId id) const {
    std::vector<CweId> out;
    for (std::uint32_t v : parents_[index_of(id)]) out.push_back(nodes_[v].id);
    return out;
}

std::optional<int> CweGraph::shortest_distance(CweId a, CweId b) const {
    const std::size_t src = index_of(a), dst = index_of(b);
    if (src == dst) return 0;
    if (component_[src] != component_[dst]) return std::nullopt;

    std::vector<int> dist(nodes_.size(), -1);
    std::deque<std::uint32_t> queue;
    dist[src] = 0;
    queue.push_back(static_cast<std::uint32_t>(src));
    while (!queue.empty()) {
        std::uint32_t u = queue.front();
        queue.pop_front();
        for (const auto* adj : {&children_[u], &parents_[u]}) {
            for (std::uint32_t v : *adj) {
                if (dist[v] != -1) continue;
                dist[v] = dist[u] + 1;
                if (v == dst) return dist[v];
                queue.push_back(v);
            }
        }
    }
    return std::nullopt;  // unreachable if components are consistent
}

std::vector<int> CweGraph::distances_from(CweId src) const {
    std::vector<int> dist(nodes_.size(), -1);
    std::deque<std::uint32_t> queue;
    dist[index_of(src)] = 0;
    queue.push_back(static_cast<std::uint32_t>(index_of(src)));
    while (!queue.empty()) {
        std::uint32_t u = queue.front();
        queue.pop_front();
        for (const auto* adj : {&children_[u], &parents_[u]}) {
            for (std::uint32_t v : *adj) {
                if (dist[v] != -1) continue;
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

bool CweGraph::same_component(CweId a, CweId b) const {
    return component_[index_of(a)] == component_[index_of(b)];
}

Direction CweGraph::relation(CweId pred, CweId truth) const {
    const std::size_t p = index_of(pred), t = index_of(truth);
    if (p == t) return Direction::Equal;
    const bool pred_above =
        (descendants_[p][t / 64] >> (t % 64)) & 1;  // path pred -> truth
    const bool truth_above = (descendants_[t][p / 64] >> (p % 64)) & 1;
    if (pred_above) return Direction::Ancestor;
    if (truth_above) return Direction::Descendant;
    return Direction::Lateral;
}

int CweGraph::subtree_depth(CweId c) const { return depth_[index_of(c)]; }

int CweGraph::max_depth_for_kind(WeaknessKind k) const {
    int best = -1;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].kind == k) best = std::max(best, depth_[i]);
    if (best < 0)
        throw LookupError("no node of kind " + std::string(to_string(k)) +
                          " in graph");
    return best;
}

GraphStats CweGraph::stats() const {
    GraphStats st;
    const std::size_t n = nodes_.size();
    st.node_count = n;
    st.edge_count = edge_count_;

    std::uint64_t pair_count = 0, dist_sum = 0;
    int diameter = 0;
    std::vector<int> dist(n);
    std::deque<std::uint32_t> queue;
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.push_back(static_cast<std::uint32_t>(s));
        while (!queue.empty()) {
            std::uint32_t u = queue.front();
            queue.pop_front();
            for (const auto* adj : {&children_[u], &parents_[u]}) {
                for (std::uint32_t v : *adj) {
                    if (dist[v] != -1) continue;
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (std::size_t t = s + 1; t < n; ++t) {
            if (dist[t] < 0) continue;
            ++pair_count;
            dist_sum += static_cast<std::uint64_t>(dist[t]);
            diameter = std::max(diameter, dist[t]);
        }
    }
    st.connected_pair_count = pair_count;
    st.diameter = diameter;
    if (pair_count > 0) {
        double mean = static_cast<double>(dist_sum) / static_cast<double>(pair_count);
        st.mean_connected_distance = mean;
        st.ceil_mean_distance = static_cast<int>(std::ceil(mean));
    }
    return st;
}

}  // namespace alpha
