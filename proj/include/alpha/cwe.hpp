#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace alpha {

class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input document could not be parsed (XML, SARIF, JSON, manifest).
class ParseError : public Error {
    using Error::Error;
};

/// A CWE id was queried that is not a node of the graph at hand.
class LookupError : public Error {
    using Error::Error;
};

/// Invalid configuration (penalty parameters, CLI arguments).
class ConfigError : public Error {
    using Error::Error;
};

class IoError : public Error {
    using Error::Error;
};

/// Numeric CWE identifier. Canonical rendering is "CWE-<n>".
struct CweId {
    std::uint32_t value = 0;

    constexpr CweId() = default;
    constexpr explicit CweId(std::uint32_t v) : value(v) {}

    auto operator<=>(const CweId&) const = default;

    std::string str() const { return "CWE-" + std::to_string(value); }
};

/// Parses "CWE-89", "cwe-89" or plain "89". Returns nullopt on anything else
/// (zero, leading garbage, trailing garbage).
std::optional<CweId> parse_cwe_id(std::string_view token);

/// Like parse_cwe_id but throws ParseError naming the offending token.
CweId require_cwe_id(std::string_view token);

/// Node kinds retained in the weakness graph, plus the two organizational
/// kinds (View, Category) that only appear when filtering is disabled.
enum class WeaknessKind {
    Pillar,
    Class,
    Base,
    Variant,
    Compound,
    Chain,
    View,
    Category,
};

constexpr bool is_weakness_kind(WeaknessKind k) {
    return k != WeaknessKind::View && k != WeaknessKind::Category;
}

std::string_view to_string(WeaknessKind k);
std::optional<WeaknessKind> parse_weakness_kind(std::string_view s);

struct CweNode {
    CweId id;
    WeaknessKind kind = WeaknessKind::Base;
    std::string name;
};

/// Relationship of a predicted CWE to the ground truth, including the
/// degenerate cases that arise during scoring.
enum class Direction {
    Equal,
    Ancestor,
    Descendant,
    Lateral,
    OutOfGraph,
    Disconnected,
    NoPrediction,
};

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

}  // namespace alpha
