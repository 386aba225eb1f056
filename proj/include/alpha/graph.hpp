#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "alpha/cwe.hpp"

namespace alpha {

/// Structural summary of the undirected view of a graph. The mean distance
/// is absent when no connected pair of distinct nodes exists.
struct GraphStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::uint64_t connected_pair_count = 0;   // unordered pairs, a != b
    std::optional<double> mean_connected_distance;
    std::optional<int> ceil_mean_distance;    // d_oog = ceil(mean)
    int diameter = 0;                         // largest finite pairwise distance
};

/// Immutable directed CWE taxonomy. Edges run parent -> child. Construction
/// validates edge endpoints, rejects self-loops and cycles, and precomputes
/// reachability and subtree depths; all queries afterwards are pure and
/// safe for concurrent use.
class CweGraph {
public:
    CweGraph() = default;
    CweGraph(std::vector<CweNode> nodes,
             std::vector<std::pair<CweId, CweId>> edges,
             std::string catalog_version);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    const std::string& catalog_version() const { return version_; }

    bool contains(CweId id) const;
    const CweNode& node(CweId id) const;  // throws LookupError
    std::span<const CweNode> nodes() const { return nodes_; }

    std::vector<CweId> children(CweId id) const;
    std::vector<CweId> parents(CweId id) const;

    /// Hop count on the undirected view; nullopt when the nodes lie in
    /// different connected components. distance(a, a) == 0.
    std::optional<int> shortest_distance(CweId a, CweId b) const;

    /// Position of a node within nodes() (sorted by id). Throws LookupError.
    std::size_t node_index(CweId id) const { return index_of(id); }

    /// Undirected hop counts from src to every node, indexed like nodes();
    /// -1 marks unreachable nodes.
    std::vector<int> distances_from(CweId src) const;

    /// Equal / Ancestor / Descendant / Lateral for two graph nodes.
    /// Ancestor means a directed path pred -> truth exists.
    Direction relation(CweId pred, CweId truth) const;

    bool same_component(CweId a, CweId b) const;

    /// Longest directed path from c to any descendant; 0 for leaves.
    int subtree_depth(CweId c) const;

    /// Maximum subtree_depth over all nodes of the given kind.
    int max_depth_for_kind(WeaknessKind k) const;  // throws if kind absent

    /// All-pairs distance statistics (single-threaded BFS sweep).
    GraphStats stats() const;

private:
    std::size_t index_of(CweId id) const;  // throws LookupError

    std::vector<CweNode> nodes_;                 // sorted by id
    std::vector<std::vector<std::uint32_t>> children_;
    std::vector<std::vector<std::uint32_t>> parents_;
    std::vector<std::uint32_t> component_;
    std::vector<int> depth_;                     // subtree depth per node
    std::vector<std::vector<std::uint64_t>> descendants_;  // bitset per node
    std::size_t edge_count_ = 0;
    std::string version_;
};

}  // namespace alpha
