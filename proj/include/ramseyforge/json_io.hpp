#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ramseyforge/morphisms.hpp"
#include "ramseyforge/structures.hpp"

namespace ramseyforge {

using ordered_json = nlohmann::ordered_json;

inline ordered_json structure_to_json(const Structure& s) {
    ordered_json j;
    if (const auto* c = std::get_if<Chain>(&s)) {
        j["kind"] = "chain";
        j["n"] = c->size;
        return j;
    }
    if (const auto* d = std::get_if<ReflexiveDigraph>(&s)) {
        j["kind"] = "digraph";
        j["n"] = d->size();
        ordered_json adj = ordered_json::array();
        for (int x = 0; x < d->size(); ++x) {
            ordered_json row = ordered_json::array();
            for (int y = 0; y < d->size(); ++y) row.push_back(d->edge(x, y) ? 1 : 0);
            adj.push_back(std::move(row));
        }
        j["adj"] = std::move(adj);
        return j;
    }
    const auto& m = std::get<MetricSpace>(s);
    j["kind"] = "metric";
    j["n"] = m.size();
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < m.size(); ++k) row.push_back(m.at(i, k).str());
        rows.push_back(std::move(row));
    }
    j["d"] = std::move(rows);
    return j;
}

inline Structure structure_from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const int n = j.at("n").get<int>();
    if (kind == "chain") return Structure(Chain(n));
    if (kind == "digraph") {
        const auto& adj = j.at("adj");
        if (static_cast<int>(adj.size()) != n)
            throw std::invalid_argument("digraph json: adj has wrong row count");
        ReflexiveDigraph d(n);
        for (int x = 0; x < n; ++x) {
            const auto& row = adj.at(x);
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("digraph json: adj row has wrong length");
            for (int y = 0; y < n; ++y) {
                int bit = row.at(y).get<int>();
                if (x == y && bit != 1)
                    throw std::invalid_argument("digraph json: missing loop (reflexivity)");
                if (bit) d.add_edge(x, y);
            }
        }
        return Structure(std::move(d));
    }
    if (kind == "metric") {
        const auto& rows = j.at("d");
        if (static_cast<int>(rows.size()) != n)
            throw std::invalid_argument("metric json: d has wrong row count");
        std::vector<Rational> dist;
        dist.reserve(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            const auto& row = rows.at(i);
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("metric json: d row has wrong length");
            for (int k = 0; k < n; ++k) dist.push_back(Rational::parse(row.at(k).get<std::string>()));
        }
        return Structure(MetricSpace(n, std::move(dist)));
    }
    throw std::invalid_argument("structure json: unknown kind '" + kind + "'");
}

inline ordered_json morphism_to_json(const Morphism& m) {
    ordered_json j;
    j["map"] = m.map;
    j["kind"] = kind_name(m.kind);
    return j;
}

inline Morphism morphism_from_json(const ordered_json& j, int dom_size, int cod_size) {
    Morphism m;
    m.map = j.at("map").get<std::vector<int>>();
    m.kind = kind_from_name(j.at("kind").get<std::string>());
    m.dom_size = dom_size;
    m.cod_size = cod_size;
    detail::require_sizes(m.map, dom_size, cod_size);
    return m;
}

// Inline structure specs for the CLI: chain:4, atour:3, rot:5, nA2:3,
// E:3:1, omega:4, B:2, or a path to a structure JSON file (optionally
// prefixed with '@').
inline Structure parse_structure_spec(const std::string& spec);

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

inline int parse_int(const std::string& s, const std::string& what) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(what);
        return v;
    } catch (...) {
        throw std::invalid_argument("cannot parse " + what + " from '" + s + "'");
    }
}

}  // namespace detail

inline Structure parse_structure_spec(const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') return parse_structure_spec(spec.substr(1));
    auto parts = detail::split(spec, ':');
    const std::string& head = parts[0];
    auto arg = [&](size_t i) -> const std::string& {
        if (i >= parts.size())
            throw std::invalid_argument("structure spec '" + spec + "' is missing a parameter");
        return parts[i];
    };
    if (head == "chain") return Structure(Chain(detail::parse_int(arg(1), "chain size")));
    if (head == "atour")
        return Structure(build_acyclic_tournament(detail::parse_int(arg(1), "tournament size")));
    if (head == "rot")
        return Structure(build_rotational_tournament(detail::parse_int(arg(1), "tournament size")));
    if (head == "nA2") return Structure(build_copies_of_a2(detail::parse_int(arg(1), "copy count")));
    if (head == "E")
        return Structure(build_equilateral(detail::parse_int(arg(1), "point count"),
                                           Rational::parse(parts.size() > 3
                                                               ? arg(2) + "/" + arg(3)
                                                               : arg(2))));
    if (head == "omega")
        return Structure(build_omega_truncation(detail::parse_int(arg(1), "truncation size")));
    if (head == "B") {
        // Deliberately local construction to avoid pulling the tournament
        // header in; mirrors build_b without block metadata.
        int n = detail::parse_int(arg(1), "family size");
        if (n < 1) throw std::invalid_argument("B:n needs n >= 1");
        ReflexiveDigraph t(1);
        for (int j = 1; j <= n; ++j) t = arrow_sum(t, build_rotational_tournament(2 * j + 1));
        t = arrow_sum(t, ReflexiveDigraph(1));
        return Structure(std::move(t));
    }
    // Fall through: treat as a file path.
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("structure spec '" + spec + "': unknown form and no such file");
    ordered_json j;
    in >> j;
    return structure_from_json(j);
}

// FNV-1a 64-bit content hash; reports embed it for their inputs.
inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string content_hash(const ordered_json& j) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(j.dump())));
    return std::string("fnv1a64:") + buf;
}

}  // namespace ramseyforge
