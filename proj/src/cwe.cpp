#include "alpha/cwe.hpp"

#include <cctype>

namespace alpha {

namespace {

bool iequals_prefix(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) !=
            std::tolower(static_cast<unsigned char>(prefix[i])))
            return false;
    }
    return true;
}

}  // namespace

std::optional<CweId> parse_cwe_id(std::string_view token) {
    if (iequals_prefix(token, "CWE-")) token.remove_prefix(4);
    if (token.empty() || token.size() > 9) return std::nullopt;
    std::uint32_t v = 0;
    for (char c : token) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + static_cast<std::uint32_t>(c - '0');
    }
    if (v == 0) return std::nullopt;
    return CweId(v);
}

CweId require_cwe_id(std::string_view token) {
    auto id = parse_cwe_id(token);
    if (!id) throw ParseError("invalid CWE id: '" + std::string(token) + "'");
    return *id;
}

std::string_view to_string(WeaknessKind k) {
    switch (k) {
        case WeaknessKind::Pillar: return "Pillar";
        case WeaknessKind::Class: return "Class";
        case WeaknessKind::Base: return "Base";
        case WeaknessKind::Variant: return "Variant";
        case WeaknessKind::Compound: return "Compound";
        case WeaknessKind::Chain: return "Chain";
        case WeaknessKind::View: return "View";
        case WeaknessKind::Category: return "Category";
    }
    return "?";
}

std::optional<WeaknessKind> parse_weakness_kind(std::string_view s) {
    using K = WeaknessKind;
    for (K k : {K::Pillar, K::Class, K::Base, K::Variant, K::Compound, K::Chain,
                K::View, K::Category}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::Equal: return "equal";
        case Direction::Ancestor: return "ancestor";
        case Direction::Descendant: return "descendant";
        case Direction::Lateral: return "lateral";
        case Direction::OutOfGraph: return "out-of-graph";
        case Direction::Disconnected: return "disconnected";
        case Direction::NoPrediction: return "no-prediction";
    }
    return "?";
}

std::optional<Direction> parse_direction(std::string_view s) {
    using D = Direction;
    for (D d : {D::Equal, D::Ancestor, D::Descendant, D::Lateral, D::OutOfGraph,
                D::Disconnected, D::NoPrediction}) {
        if (s == to_string(d)) return d;
    }
    return std::nullopt;
}

}  // namespace alpha
