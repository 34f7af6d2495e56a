#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramseyforge/morphisms.hpp"
#include "ramseyforge/parallel.hpp"

namespace ramseyforge {

// T_j: the rotational tournament on 2j+1 vertices. The family indexing is
// fixed so that T_1 is the 3-cycle, T_2 the rotational 5-tournament, and
// so on.
inline ReflexiveDigraph rotational_family(int j) {
    if (j < 1) throw std::invalid_argument("rotational_family: need j >= 1");
    return build_rotational_tournament(2 * j + 1);
}

namespace detail {

// Reachability both ways from vertex 0 over non-loop edges.
inline bool strongly_connected(const ReflexiveDigraph& d) {
    const int n = d.size();
    auto reach = [&](bool forward) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w) {
                if (w == v || seen[w]) continue;
                bool e = forward ? d.edge(v, w) : d.edge(w, v);
                if (e) {
                    seen[w] = true;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == n;
    };
    return reach(true) && reach(false);
}

inline int min_non_loop_outdeg(const ReflexiveDigraph& d) {
    int best = d.size();
    for (int v = 0; v < d.size(); ++v) {
        int deg = 0;
        for (int w = 0; w < d.size(); ++w)
            if (w != v && d.edge(v, w)) ++deg;
        best = std::min(best, deg);
    }
    return best;
}

inline int min_non_loop_indeg(const ReflexiveDigraph& d) {
    int best = d.size();
    for (int v = 0; v < d.size(); ++v) {
        int deg = 0;
        for (int w = 0; w < d.size(); ++w)
            if (w != v && d.edge(w, v)) ++deg;
        best = std::min(best, deg);
    }
    return best;
}

// Lexicographically least surjective homomorphism S -> T, or nothing.
// Plain DFS with edge and surjectivity pruning; `nodes` is charged against
// the caller's budget.
inline std::optional<std::vector<int>> first_surjective_hom(const ReflexiveDigraph& S,
                                                            const ReflexiveDigraph& T,
                                                            std::uint64_t max_nodes,
                                                            std::uint64_t& nodes) {
    const int n = S.size(), m = T.size();
    if (n < m) return std::nullopt;
    std::vector<int> f(n, -1), hits(m, 0);
    int covered = 0;
    int pos = 0;
    while (pos >= 0) {
        int v = f[pos] + 1;
        if (f[pos] >= 0) {
            if (--hits[f[pos]] == 0) --covered;
            f[pos] = -1;
        }
        bool advanced = false;
        for (; v < m; ++v) {
            if (++nodes > max_nodes)
                throw BudgetError("surjective homomorphism search exceeded node budget", "max_nodes");
            if (m - covered - (hits[v] == 0 ? 1 : 0) > n - pos - 1) continue;
            bool ok = true;
            for (int u = 0; u < pos && ok; ++u) {
                if (S.edge(u, pos) && !T.edge(f[u], v)) ok = false;
                if (S.edge(pos, u) && !T.edge(v, f[u])) ok = false;
            }
            if (!ok) continue;
            f[pos] = v;
            if (++hits[v] == 1) ++covered;
            advanced = true;
            break;
        }
        if (!advanced) {
            --pos;
            continue;
        }
        if (pos == n - 1) {
            if (covered == m) return f;
            continue;  // retry larger values at this position
        }
        ++pos;
    }
    return std::nullopt;
}

}  // namespace detail

// A surjective homomorphism exhibiting S as an inflation of T, or nothing.
// The witness is the lexicographically least such map. For tournament
// inputs two sound prechecks cut the search: a strongly connected target
// forces a strongly connected source, and every source vertex needs at
// least the minimum in/out degree of the target.
inline std::optional<Morphism> is_inflation(const ReflexiveDigraph& S, const ReflexiveDigraph& T,
                                            const EnumBudget& budget = {}) {
    if (S.size() < T.size()) return std::nullopt;
    PropertyFlags sf = classify(S), tf = classify(T);
    if (sf.is_tournament && tf.is_tournament && T.size() >= 2) {
        if (detail::min_non_loop_outdeg(S) < detail::min_non_loop_outdeg(T)) return std::nullopt;
        if (detail::min_non_loop_indeg(S) < detail::min_non_loop_indeg(T)) return std::nullopt;
        if (detail::strongly_connected(T) && !detail::strongly_connected(S)) return std::nullopt;
    }
    std::uint64_t nodes = 0;
    auto f = detail::first_surjective_hom(S, T, budget.max_nodes, nodes);
    if (!f) return std::nullopt;
    return Morphism{S.size(), T.size(), std::move(*f), MorphismKind::surjective_hom};
}

// B_n = 1 => T_1 => T_2 => ... => T_n => 1 with block extents retained.
struct BlockTournament {
    ReflexiveDigraph t;
    // Half-open vertex ranges: block 0 is the leading singleton, block i is
    // T_i for 1 <= i <= n, block n+1 is the trailing singleton.
    std::vector<std::pair<int, int>> blocks;

    BlockTournament() : t(1) {}
};

inline BlockTournament build_b(int n) {
    if (n < 1) throw std::invalid_argument("build_b: need n >= 1");
    int total = 2;
    for (int j = 1; j <= n; ++j) total += 2 * j + 1;
    if (total > ReflexiveDigraph::kMaxVertices)
        throw std::invalid_argument("build_b: size cap exceeded (" + std::to_string(total) + " vertices)");

    BlockTournament b;
    b.t = ReflexiveDigraph(1);
    b.blocks.emplace_back(0, 1);
    for (int j = 1; j <= n; ++j) {
        int start = b.t.size();
        b.t = arrow_sum(b.t, rotational_family(j));
        b.blocks.emplace_back(start, b.t.size());
    }
    int start = b.t.size();
    b.t = arrow_sum(b.t, ReflexiveDigraph(1));
    b.blocks.emplace_back(start, b.t.size());
    return b;
}

// phi_i: B_n -> A_3 sending everything that arrows T_i to 0, T_i itself to
// 1, and everything T_i arrows to 2. Asserted to be a surjective
// homomorphism (hence a quotient map of reflexive tournaments).
inline Morphism phi_map(const BlockTournament& b, int i) {
    int n = static_cast<int>(b.blocks.size()) - 2;
    if (i < 1 || i > n) throw std::invalid_argument("phi_map: index out of range");
    Morphism m;
    m.dom_size = b.t.size();
    m.cod_size = 3;
    m.kind = MorphismKind::surjective_hom;
    m.map.assign(b.t.size(), 0);
    for (int block = 0; block < static_cast<int>(b.blocks.size()); ++block) {
        int value = block < i ? 0 : (block == i ? 1 : 2);
        for (int v = b.blocks[block].first; v < b.blocks[block].second; ++v) m.map[v] = value;
    }
    auto res = check(m.map, OrderedStructure(Structure(b.t)),
                     OrderedStructure(Structure(build_acyclic_tournament(3))),
                     MorphismKind::surjective_hom);
    if (!res.ok) throw std::logic_error("phi_map: not a surjective homomorphism: " + res.reason);
    return m;
}

// The coloring chi of Surj(S, A_3): color j when the middle fiber
// S[f^{-1}(1)] is an inflation of T_j, default 1 when it inflates no
// member. Well-definedness rests on the family having no siblings; a
// double match would refute that at this scale, so it is surfaced rather
// than resolved.
struct ChiResult {
    std::vector<Morphism> surjections;  // Surj(S, A_3), canonical order
    std::vector<int> colors;            // values in 1..n
    std::vector<int> double_match_indices;  // expected empty

    bool well_defined() const { return double_match_indices.empty(); }
};

inline ChiResult chi_coloring(const ReflexiveDigraph& S, int n, const EnumBudget& budget = {}) {
    ChiResult r;
    r.surjections = enumerate_morphisms(OrderedStructure(Structure(S)),
                                        OrderedStructure(Structure(build_acyclic_tournament(3))),
                                        MorphismKind::surjective_hom, budget);
    for (int idx = 0; idx < static_cast<int>(r.surjections.size()); ++idx) {
        const auto& f = r.surjections[idx].map;
        std::vector<int> fiber;
        for (int v = 0; v < S.size(); ++v)
            if (f[v] == 1) fiber.push_back(v);
        ReflexiveDigraph middle = induced_subdigraph(S, fiber);
        int match = 0;
        int matches = 0;
        for (int j = 1; j <= n; ++j) {
            if (middle.size() < 2 * j + 1) continue;
            if (is_inflation(middle, rotational_family(j), budget)) {
                match = j;
                ++matches;
            }
        }
        if (matches > 1) r.double_match_indices.push_back(idx);
        r.colors.push_back(matches >= 1 ? match : 1);
    }
    return r;
}

// The no-dual-degree mechanism at S = B_n, w = identity: chi takes at
// least n distinct values on Surj(B_n, A_3), witnessed by phi_1..phi_n.
struct NoDegreeReport {
    int n = 0;
    int b_size = 0;
    int surjection_count = 0;
    std::vector<int> colors;
    std::vector<int> phi_positions;  // index of phi_i in the enumeration
    bool phi_colors_match = false;   // chi(phi_i) == i for every i
    int distinct_colors = 0;
    bool double_match_fired = false;
};

inline NoDegreeReport no_degree_certificate(int n, const EnumBudget& budget = {}) {
    BlockTournament b = build_b(n);
    NoDegreeReport rep;
    rep.n = n;
    rep.b_size = b.t.size();
    ChiResult chi = chi_coloring(b.t, n, budget);
    rep.surjection_count = static_cast<int>(chi.surjections.size());
    rep.colors = chi.colors;
    rep.double_match_fired = !chi.well_defined();

    rep.phi_colors_match = true;
    for (int i = 1; i <= n; ++i) {
        Morphism phi = phi_map(b, i);
        int pos = -1;
        for (int idx = 0; idx < static_cast<int>(chi.surjections.size()); ++idx)
            if (chi.surjections[idx].map == phi.map) {
                pos = idx;
                break;
            }
        if (pos < 0) throw std::logic_error("no_degree_certificate: phi_i missing from Surj(B_n, A_3)");
        rep.phi_positions.push_back(pos);
        if (chi.colors[pos] != i) rep.phi_colors_match = false;
    }

    std::vector<int> seen;
    for (int c : chi.colors)
        if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
    rep.distinct_colors = static_cast<int>(seen.size());
    return rep;
}

// ---- sibling search ----------------------------------------------------------

// Labeled tournament on `size` vertices from an orientation mask: bit p of
// the mask orients the p-th vertex pair (lexicographic (i,j), i<j) as
// i -> j when set, j -> i when clear.
inline ReflexiveDigraph tournament_from_mask(int size, std::uint64_t mask) {
    ReflexiveDigraph d(size);
    int p = 0;
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j, ++p) {
            if (mask & (std::uint64_t{1} << p))
                d.add_edge(i, j);
            else
                d.add_edge(j, i);
        }
    return d;
}

struct SiblingSearchResult {
    bool found = false;
    int size = 0;
    std::uint64_t mask = 0;
    std::vector<int> hom_to_a;
    std::vector<int> hom_to_b;
    // (size, orientation-space cardinality) for every size processed.
    std::vector<std::pair<int, std::uint64_t>> sizes_scanned;
};

// Hunts a common inflation of T_a and T_b (a, b odd vertex counts) over
// all labeled tournaments on at most max_size vertices. Sizes are scanned
// in increasing order and the orientation space of each size is sharded
// across workers; "first" means the lexicographically least (size, mask)
// over the whole space regardless of worker count.
inline SiblingSearchResult sibling_search(int a, int b, int max_size, int workers = 1,
                                          const EnumBudget& budget = {}) {
    if (a < 3 || a % 2 == 0 || b < 3 || b % 2 == 0)
        throw std::invalid_argument("sibling_search: family members have odd size >= 3");
    ReflexiveDigraph ta = build_rotational_tournament(a);
    ReflexiveDigraph tb = build_rotational_tournament(b);
    const int need_deg = std::max((a - 1) / 2, (b - 1) / 2);

    SiblingSearchResult res;
    for (int s = std::max(a, b); s <= max_size; ++s) {
        int bits = s * (s - 1) / 2;
        if (bits >= 63) throw BudgetError("orientation space too large", "orientation_bits");
        std::uint64_t space = std::uint64_t{1} << bits;
        res.sizes_scanned.emplace_back(s, space);

        std::atomic<std::uint64_t> best{UINT64_MAX};
        run_sharded(space, std::max(1, workers), [&](int, std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t mask = lo; mask < hi; ++mask) {
                if ((mask & 0x3ff) == 0 && best.load(std::memory_order_relaxed) < lo) return;
                ReflexiveDigraph t = tournament_from_mask(s, mask);
                if (detail::min_non_loop_outdeg(t) < need_deg) continue;
                if (detail::min_non_loop_indeg(t) < need_deg) continue;
                if (!detail::strongly_connected(t)) continue;
                std::uint64_t nodes = 0;
                if (!detail::first_surjective_hom(t, ta, budget.max_nodes, nodes)) continue;
                nodes = 0;
                if (!detail::first_surjective_hom(t, tb, budget.max_nodes, nodes)) continue;
                std::uint64_t prev = best.load();
                while (mask < prev && !best.compare_exchange_weak(prev, mask)) {
                }
                return;
            }
        });

        std::uint64_t mask = best.load();
        if (mask != UINT64_MAX) {
            res.found = true;
            res.size = s;
            res.mask = mask;
            ReflexiveDigraph t = tournament_from_mask(s, mask);
            std::uint64_t nodes = 0;
            res.hom_to_a = *detail::first_surjective_hom(t, ta, budget.max_nodes, nodes);
            res.hom_to_b = *detail::first_surjective_hom(t, tb, budget.max_nodes, nodes);
            return res;
        }
    }
    return res;
}

}  // namespace ramseyforge
