#include "alpha/penalty.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace alpha {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

void PenaltyConfig::validate() const {
    if (!(alpha_up > alpha_lateral))
        throw ConfigError("penalty config: alpha_up must exceed alpha_lateral");
    if (!(alpha_lateral > alpha_min))
        throw ConfigError("penalty config: alpha_lateral must exceed alpha_min");
    if (!(alpha_min > 1.0))
        throw ConfigError("penalty config: alpha_min must exceed 1.0");
    if (alpha_max != alpha_lateral)
        throw ConfigError("penalty config: alpha_max is tied to alpha_lateral");
    if (!(alpha_oog >= alpha_up))
        throw ConfigError("penalty config: alpha_oog must be >= alpha_up");
    if (d_oog <= 0) throw ConfigError("penalty config: d_oog must be positive");
}

PenaltyConfig PenaltyConfig::with_d_oog_from(const GraphStats& st) const {
    if (!st.ceil_mean_distance)
        throw ConfigError("graph has no connected pairs; d_oog is undefined");
    PenaltyConfig out = *this;
    out.d_oog = *st.ceil_mean_distance;
    return out;
}

double alpha_down(const CweGraph& g, CweId truth, const PenaltyConfig& cfg) {
    cfg.validate();
    const int depth = g.subtree_depth(truth);
    const int max_depth = g.max_depth_for_kind(g.node(truth).kind);
    if (max_depth == 0) return cfg.alpha_max;  // every node of this kind is a leaf
    return cfg.alpha_max - (cfg.alpha_max - cfg.alpha_min) *
                               static_cast<double>(depth) /
                               static_cast<double>(max_depth);
}

PenaltyResult penalty(const CweGraph& g, std::optional<CweId> pred, CweId truth,
                      const PenaltyConfig& cfg) {
    cfg.validate();
    g.node(truth);  // ground truth must be a graph node

    const double oog_penalty = cfg.d_oog * cfg.alpha_oog;
    if (!pred)
        return {oog_penalty, cfg.d_oog, cfg.alpha_oog, Direction::NoPrediction};
    if (*pred == truth) return {0.0, 0, 1.0, Direction::Equal};
    if (!g.contains(*pred))
        return {oog_penalty, cfg.d_oog, cfg.alpha_oog, Direction::OutOfGraph};
    if (!g.same_component(*pred, truth))
        return {oog_penalty, cfg.d_oog, cfg.alpha_oog, Direction::Disconnected};

    const int d = *g.shortest_distance(*pred, truth);
    const Direction dir = g.relation(*pred, truth);
    double mult = 0.0;
    switch (dir) {
        case Direction::Ancestor: mult = cfg.alpha_up; break;
        case Direction::Descendant: mult = alpha_down(g, truth, cfg); break;
        case Direction::Lateral: mult = cfg.alpha_lateral; break;
        default: mult = cfg.alpha_lateral; break;  // unreachable
    }
    return {d * mult, d, mult, dir};
}

std::size_t PenaltyMatrix::pos(CweId id) const {
    auto it = std::lower_bound(index_.begin(), index_.end(), id);
    if (it == index_.end() || *it != id)
        throw LookupError("CWE id " + id.str() + " not in penalty matrix index");
    return static_cast<std::size_t>(it - index_.begin());
}

double PenaltyMatrix::at(CweId pred, CweId truth) const {
    return values_[pos(pred) * index_.size() + pos(truth)];
}

PenaltyMatrix PenaltyMatrix::build(const CweGraph& g, const PenaltyConfig& cfg,
                                   bool normalize,
                                   const std::vector<CweId>& subset) {
    cfg.validate();
    if (g.node_count() == 0) throw ConfigError("penalty matrix over empty graph");

    PenaltyMatrix m;
    m.cfg_ = cfg;
    m.version_ = g.catalog_version();
    if (subset.empty()) {
        for (const CweNode& n : g.nodes()) m.index_.push_back(n.id);
    } else {
        m.index_ = subset;
        std::sort(m.index_.begin(), m.index_.end());
        m.index_.erase(std::unique(m.index_.begin(), m.index_.end()),
                       m.index_.end());
        for (CweId id : m.index_) g.node(id);  // all must be graph nodes
    }

    const std::size_t n = m.index_.size();
    std::vector<std::size_t> gpos(n);
    for (std::size_t i = 0; i < n; ++i) gpos[i] = g.node_index(m.index_[i]);

    const double oog_penalty = cfg.d_oog * cfg.alpha_oog;
    m.values_.assign(n * n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        const CweId truth = m.index_[t];
        const std::vector<int> dist = g.distances_from(truth);
        const double down_mult = alpha_down(g, truth, cfg);
        for (std::size_t v = 0; v < n; ++v) {
            if (v == t) continue;
            const int d = dist[gpos[v]];
            double p;
            if (d < 0) {
                p = oog_penalty;
            } else {
                switch (g.relation(m.index_[v], truth)) {
                    case Direction::Ancestor: p = d * cfg.alpha_up; break;
                    case Direction::Descendant: p = d * down_mult; break;
                    default: p = d * cfg.alpha_lateral; break;
                }
            }
            m.values_[v * n + t] = p;
        }
    }

    const GraphStats st = g.stats();
    m.d_max_ = st.diameter;
    m.p_max_ = st.diameter * cfg.alpha_oog;
    m.normalized_ = normalize;
    if (normalize) {
        if (m.p_max_ <= 0.0)
            throw ConfigError("cannot normalize: graph diameter is zero");
        for (double& v : m.values_) v /= m.p_max_;
    }
    return m;
}

void PenaltyMatrix::write_csv(std::ostream& out) const {
    out << "cwe";
    for (CweId id : index_) out << "," << id.str();
    out << "\n";
    const std::size_t n = index_.size();
    for (std::size_t v = 0; v < n; ++v) {
        out << index_[v].str();
        for (std::size_t t = 0; t < n; ++t)
            out << "," << fmt_double(values_[v * n + t]);
        out << "\n";
    }
}

void PenaltyMatrix::write_sidecar(std::ostream& out) const {
    json doc = {{"catalog_version", version_},
                {"normalized", normalized_},
                {"p_max", p_max_},
                {"d_max", d_max_},
                {"config",
                 {{"alpha_up", cfg_.alpha_up},
                  {"alpha_lateral", cfg_.alpha_lateral},
                  {"alpha_min", cfg_.alpha_min},
                  {"alpha_max", cfg_.alpha_max},
                  {"alpha_oog", cfg_.alpha_oog},
                  {"d_oog", cfg_.d_oog}}}};
    out << doc.dump(2) << "\n";
}

void PenaltyMatrix::write_files(const std::filesystem::path& csv_path) const {
    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot write " + csv_path.string());
    write_csv(csv);
    const auto sidecar_path = csv_path.string() + ".meta.json";
    std::ofstream sidecar(sidecar_path);
    if (!sidecar) throw IoError("cannot write " + sidecar_path);
    write_sidecar(sidecar);
}

PenaltyMatrix PenaltyMatrix::load_files(const std::filesystem::path& csv_path) {
    std::ifstream csv(csv_path);
    if (!csv) throw IoError("cannot open " + csv_path.string());

    PenaltyMatrix m;
    std::string line;
    if (!std::getline(csv, line))
        throw ParseError("penalty matrix CSV is empty: " + csv_path.string());
    {
        std::istringstream header(line);
        std::string cell;
        std::getline(header, cell, ',');  // corner cell
        while (std::getline(header, cell, ','))
            m.index_.push_back(require_cwe_id(cell));
    }
    const std::size_t n = m.index_.size();
    m.values_.reserve(n * n);
    std::size_t row = 0;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        if (row >= n || require_cwe_id(cell) != m.index_[row])
            throw ParseError("penalty matrix CSV: row order does not match header");
        std::size_t col = 0;
        while (std::getline(cells, cell, ',')) {
            double v = 0.0;
            auto [ptr, ec] =
                std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw ParseError("penalty matrix CSV: bad number '" + cell + "'");
            m.values_.push_back(v);
            ++col;
        }
        if (col != n)
            throw ParseError("penalty matrix CSV: row width does not match header");
        ++row;
    }
    if (row != n) throw ParseError("penalty matrix CSV: missing rows");

    const auto sidecar_path = csv_path.string() + ".meta.json";
    std::ifstream sidecar(sidecar_path);
    if (sidecar) {
        try {
            json doc = json::parse(sidecar);
            m.normalized_ = doc.value("normalized", false);
            m.p_max_ = doc.value("p_max", 0.0);
            m.d_max_ = doc.value("d_max", 0);
            m.version_ = doc.value("catalog_version", "unknown");
            if (doc.contains("config")) {
                const auto& c = doc["config"];
                m.cfg_.alpha_up = c.value("alpha_up", m.cfg_.alpha_up);
                m.cfg_.alpha_lateral = c.value("alpha_lateral", m.cfg_.alpha_lateral);
                m.cfg_.alpha_min = c.value("alpha_min", m.cfg_.alpha_min);
                m.cfg_.alpha_max = c.value("alpha_max", m.cfg_.alpha_max);
                m.cfg_.alpha_oog = c.value("alpha_oog", m.cfg_.alpha_oog);
                m.cfg_.d_oog = c.value("d_oog", m.cfg_.d_oog);
            }
        } catch (const json::exception& e) {
            throw ParseError(std::string("matrix sidecar parse error: ") + e.what());
        }
    }
    return m;
}

}  // namespace alpha
