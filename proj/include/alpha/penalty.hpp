#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "alpha/graph.hpp"

namespace alpha {

/// Penalty parameters. The defaults are the reference parameterisation;
/// alternative values must keep alpha_up > alpha_lateral > alpha_min and
/// alpha_min > 1. validate() is called by every scoring entry point.
struct PenaltyConfig {
    double alpha_up = 2.0;
    double alpha_lateral = 1.8;
    double alpha_min = 1.1;
    double alpha_max = 1.8;  // tied to alpha_lateral by construction
    double alpha_oog = 2.5;
    int d_oog = 7;

    void validate() const;  // throws ConfigError

    /// Copy with d_oog taken from the graph's ceil-mean distance.
    PenaltyConfig with_d_oog_from(const GraphStats& st) const;

    bool operator==(const PenaltyConfig&) const = default;
};

struct PenaltyResult {
    double penalty = 0.0;
    int distance = 0;
    double multiplier = 1.0;
    Direction direction = Direction::Equal;

    bool operator==(const PenaltyResult&) const = default;
};

/// Adaptive over-specification multiplier for the given ground truth:
/// alpha_max at leaves, alpha_min at the deepest subtree of the truth's
/// kind, linear in between. Kinds whose nodes are all leaves get alpha_max.
double alpha_down(const CweGraph& g, CweId truth, const PenaltyConfig& cfg);

/// Penalty for one prediction. An absent prediction is charged the full
/// out-of-graph penalty (NoPrediction). The ground truth must be a node of
/// the graph; anything else throws LookupError.
PenaltyResult penalty(const CweGraph& g, std::optional<CweId> pred, CweId truth,
                      const PenaltyConfig& cfg);

/// Dense penalty table over a node subset (default: all nodes), row =
/// predicted, column = truth. Normalization divides by P_max = d_max *
/// alpha_oog with d_max the undirected diameter.
class PenaltyMatrix {
public:
    const std::vector<CweId>& index() const { return index_; }
    double at(CweId pred, CweId truth) const;  // throws LookupError
    bool normalized() const { return normalized_; }
    double p_max() const { return p_max_; }
    int d_max() const { return d_max_; }
    const PenaltyConfig& config() const { return cfg_; }
    const std::string& catalog_version() const { return version_; }

    static PenaltyMatrix build(const CweGraph& g, const PenaltyConfig& cfg,
                               bool normalize,
                               const std::vector<CweId>& subset = {});

    /// CSV with a header row/column of CWE ids; the sidecar JSON records
    /// config, catalog version, P_max and d_max.
    void write_csv(std::ostream& out) const;
    void write_sidecar(std::ostream& out) const;
    void write_files(const std::filesystem::path& csv_path) const;

    static PenaltyMatrix load_files(const std::filesystem::path& csv_path);

private:
    std::size_t pos(CweId id) const;

    std::vector<CweId> index_;
    std::vector<double> values_;  // row-major
    bool normalized_ = false;
    double p_max_ = 0.0;
    int d_max_ = 0;
    PenaltyConfig cfg_;
    std::string version_;
};

}  // namespace alpha
