#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramseyforge/combinatorics.hpp"
#include "ramseyforge/morphisms.hpp"

namespace ramseyforge {

enum class ExpansionKind { linear_order, tidy_edge_order, acyclic_orientation };

inline const char* expansion_kind_name(ExpansionKind k) {
    switch (k) {
        case ExpansionKind::linear_order: return "linear_order";
        case ExpansionKind::tidy_edge_order: return "tidy_edge_order";
        case ExpansionKind::acyclic_orientation: return "acyclic_orientation";
    }
    return "?";
}

// ---- fibers U^{-1}(A): every enrichment of a bare structure ----------------

// All n! vertex orders, lexicographic over the permutation encoding.
inline std::vector<LinearOrder> linear_order_fibers(int n) {
    std::vector<LinearOrder> out;
    for (auto& p : all_permutations(n)) out.push_back(LinearOrder(std::move(p)));
    return out;
}

// All tidy edge orders of a digraph: any permutation of the loops followed
// by any permutation of the non-loops (p! * m! listings), lexicographic over
// the edge-sequence encoding.
inline std::vector<EdgeOrder> tidy_edge_order_fibers(const ReflexiveDigraph& d) {
    std::vector<Edge> loops = d.loops();
    std::vector<Edge> non_loops = d.non_loops();
    std::sort(loops.begin(), loops.end());
    std::sort(non_loops.begin(), non_loops.end());
    std::vector<EdgeOrder> out;
    std::vector<Edge> lp = loops;
    do {
        std::vector<Edge> np = non_loops;
        do {
            std::vector<Edge> seq = lp;
            seq.insert(seq.end(), np.begin(), np.end());
            out.push_back(EdgeOrder(std::move(seq)));
        } while (std::next_permutation(np.begin(), np.end()));
    } while (std::next_permutation(lp.begin(), lp.end()));
    std::sort(out.begin(), out.end());
    return out;
}

// All acyclic orientations of a reflexive graph, ascending over the
// orientation bitmask (bit i orients the i-th symmetric pair low->high).
inline std::vector<ReflexiveDigraph> acyclic_orientation_fibers(const ReflexiveDigraph& g) {
    if (!classify(g).is_graph)
        throw std::invalid_argument("acyclic_orientation fibers need a reflexive graph");
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < g.size(); ++x)
        for (int y = x + 1; y < g.size(); ++y)
            if (g.edge(x, y)) pairs.emplace_back(x, y);
    if (pairs.size() > 30) throw BudgetError("too many edge pairs to orient", "orientation_pairs");
    std::vector<ReflexiveDigraph> out;
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
        ReflexiveDigraph d(g.size());
        for (size_t i = 0; i < pairs.size(); ++i) {
            auto [x, y] = pairs[i];
            if (mask & (1u << i))
                d.add_edge(x, y);
            else
                d.add_edge(y, x);
        }
        if (classify(d).is_acyclic) out.push_back(std::move(d));
    }
    return out;
}

inline std::uint64_t acyclic_orientation_count(const ReflexiveDigraph& g) {
    return acyclic_orientation_fibers(g).size();
}

// ---- dual reasonableness witnesses ------------------------------------------
//
// Given a surjection f : X -> Y and an enrichment of Y, produce the
// enrichment of X that makes f rigid. Inside each f-block the order is by
// ascending source label; any block-respecting order would do, one is fixed
// for determinism.

inline LinearOrder dual_reasonable_vertex_witness(const std::vector<int>& f, int dom_size,
                                                  const LinearOrder& target_order) {
    detail::require_sizes(f, dom_size, target_order.size());
    if (!detail::is_surjective(f, target_order.size()))
        throw std::invalid_argument("dual_reasonable_vertex_witness: map is not surjective");
    std::vector<int> target_rank = target_order.rank();
    std::vector<int> perm(dom_size);
    for (int i = 0; i < dom_size; ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return target_rank[f[a]] < target_rank[f[b]]; });
    return LinearOrder(std::move(perm));
}

// Tidy edge-order witness for a quotient map of digraphs: loops sorted by
// (rank of image edge, then lex), then non-loops likewise. Putting all the
// loops first keeps the order tidy; rigidity survives because loops can only
// map to loops and every codomain edge keeps a preimage in the right block.
inline EdgeOrder dual_reasonable_edge_witness(const std::vector<int>& f, const ReflexiveDigraph& X,
                                              const ReflexiveDigraph& Y,
                                              const EdgeOrder& target_order) {
    detail::require_sizes(f, X.size(), Y.size());
    auto rank_of = [&](const Edge& e) {
        Edge img{f[e.first], f[e.second]};
        auto idx = target_order.index_of(img);
        if (!idx)
            throw std::invalid_argument("dual_reasonable_edge_witness: image edge missing from target order");
        return *idx;
    };
    auto block_sort = [&](std::vector<Edge> edges) {
        std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
            int ra = rank_of(a), rb = rank_of(b);
            if (ra != rb) return ra < rb;
            return a < b;
        });
        return edges;
    };
    std::vector<Edge> seq = block_sort(X.loops());
    std::vector<Edge> nl = block_sort(X.non_loops());
    seq.insert(seq.end(), nl.begin(), nl.end());
    return EdgeOrder(std::move(seq));
}

// ---- degree-bound reports ---------------------------------------------------

enum class BoundClass { metric, digraph, graph };

struct BoundEntry {
    std::string thm;        // "3.2", "4.2", "4.3", "4.6", "4.7"
    std::string relation;   // "=" or "<="
    std::uint64_t bound = 0;
    bool symbolic_only = false;  // quantifies over Borel colorings, not desk-verifiable
    std::string formula;
};

struct BoundReport {
    BoundClass cls = BoundClass::metric;
    int n = 0;          // carrier size
    int loops = 0;      // p in the small-degree bounds
    int non_loops = 0;  // m
    int isolated = 0;   // p in the big-degree bounds
    std::vector<BoundEntry> entries;
};

inline BoundReport bound_report_metric(const MetricSpace& m) {
    BoundReport r;
    r.cls = BoundClass::metric;
    r.n = m.size();
    r.entries.push_back({"3.2", "=", factorial_u64(m.size()), false, "n!"});
    return r;
}

inline BoundReport bound_report_digraph(const ReflexiveDigraph& d) {
    BoundReport r;
    r.cls = BoundClass::digraph;
    r.n = d.size();
    r.loops = d.size();
    r.non_loops = d.non_loop_count();
    r.isolated = d.isolated_count();
    std::uint64_t small = checked_mul_u64(factorial_u64(r.loops), factorial_u64(r.non_loops));
    r.entries.push_back({"4.2", "<=", small, false, "p!*m!"});
    std::uint64_t big = checked_mul_u64(
        checked_mul_u64(factorial_u64(r.n), factorial_u64(r.non_loops)), pow2_u64(r.n - r.isolated));
    r.entries.push_back({"4.6", "<=", big, true, "n!*m!*2^(n-p)"});
    return r;
}

inline BoundReport bound_report_graph(const ReflexiveDigraph& g) {
    if (!classify(g).is_graph) throw std::invalid_argument("bound_report_graph needs a reflexive graph");
    BoundReport r;
    r.cls = BoundClass::graph;
    r.n = g.size();
    r.loops = g.size();
    r.non_loops = g.non_loop_count();
    r.isolated = g.isolated_count();
    std::uint64_t small = checked_mul_u64(factorial_u64(r.loops), factorial_u64(r.non_loops));
    r.entries.push_back({"4.3", "<=", small, false, "p!*m!"});
    std::uint64_t a = acyclic_orientation_count(g);
    std::uint64_t big = checked_mul_u64(
        checked_mul_u64(checked_mul_u64(factorial_u64(r.n), factorial_u64(r.non_loops)),
                        pow2_u64(r.n - r.isolated)),
        a);
    r.entries.push_back({"4.7", "<=", big, true, "n!*m!*2^(n-p)*a(G)"});
    return r;
}

// ---- instance-level expansion axioms ---------------------------------------

struct AxiomsInstanceReport {
    int reasonableness_checks = 0;
    int uniqueness_checks = 0;
    std::vector<std::string> violations;  // expected empty

    bool clean() const { return violations.empty(); }
};

// For every sampled surjection f : X ->> Y over vertex orders:
//  - for every order of Y, the block-sort witness order on X makes f rigid;
//  - for every order of X, exactly one order of Y makes f rigid (and it is
//    the induced dual restriction).
inline AxiomsInstanceReport check_axioms_instance_vertex(int dom_size, int cod_size,
                                                         const std::vector<std::vector<int>>& sample) {
    AxiomsInstanceReport rep;
    auto cod_orders = linear_order_fibers(cod_size);
    auto dom_orders = linear_order_fibers(dom_size);
    for (const auto& f : sample) {
        for (const auto& target : cod_orders) {
            LinearOrder witness = dual_reasonable_vertex_witness(f, dom_size, target);
            ++rep.reasonableness_checks;
            if (!detail::check_rigid(f, witness, target).ok)
                rep.violations.push_back("witness order fails rigid check");
        }
        for (const auto& dom_order : dom_orders) {
            int rigid_targets = 0;
            for (const auto& target : cod_orders)
                if (detail::check_rigid(f, dom_order, target).ok) ++rigid_targets;
            ++rep.uniqueness_checks;
            if (rigid_targets != 1)
                rep.violations.push_back("dual restriction not unique: " +
                                         std::to_string(rigid_targets) + " rigid codomain orders");
            else if (!detail::check_rigid(f, dom_order,
                                          induced_dual_restriction(f, cod_size, dom_order))
                          .ok)
                rep.violations.push_back("induced dual restriction is not the rigid one");
        }
    }
    return rep;
}

// Same two checks over tidy edge orders for quotient maps of digraphs.
inline AxiomsInstanceReport check_axioms_instance_edge(const ReflexiveDigraph& X,
                                                       const ReflexiveDigraph& Y,
                                                       const std::vector<std::vector<int>>& sample) {
    AxiomsInstanceReport rep;
    auto x_orders = tidy_edge_order_fibers(X);
    auto y_orders = tidy_edge_order_fibers(Y);
    for (const auto& f : sample) {
        if (!check(f, OrderedStructure(Structure(X)), OrderedStructure(Structure(Y)),
                   MorphismKind::quotient)
                 .ok)
            throw std::invalid_argument("check_axioms_instance_edge: sample map is not a quotient");
        for (const auto& target : y_orders) {
            EdgeOrder witness = dual_reasonable_edge_witness(f, X, Y, target);
            ++rep.reasonableness_checks;
            if (!witness.is_tidy(X) || !detail::check_edge_rigid(f, witness, target, true).ok)
                rep.violations.push_back("edge witness order fails tidy rigid check");
        }
        for (const auto& dom_order : x_orders) {
            int rigid_targets = 0;
            for (const auto& target : y_orders)
                if (detail::check_edge_rigid(f, dom_order, target, true).ok) ++rigid_targets;
            ++rep.uniqueness_checks;
            if (rigid_targets != 1)
                rep.violations.push_back("edge dual restriction not unique: " +
                                         std::to_string(rigid_targets) + " rigid codomain orders");
        }
    }
    return rep;
}

// ---- amalgamation symmetrization --------------------------------------------

// A compatible cone over an (A,B)-diagram: one apex digraph, quotient maps
// onto reflexive graphs, and optional diagram arrows the maps must commute
// with.
struct AmalgamationCone {
    struct DiagramArrow {
        int from = 0;
        int to = 0;
        std::vector<int> h;
    };

    ReflexiveDigraph apex;
    std::vector<ReflexiveDigraph> targets;
    std::vector<std::vector<int>> maps;
    std::vector<DiagramArrow> arrows;
};

struct SymmetrizedSolution {
    ReflexiveDigraph apex;
    std::vector<std::vector<int>> maps;
    int revalidated = 0;
};

// Replaces the apex by its symmetrization and re-validates every cone map
// as a quotient onto its (graph) target, plus diagram commutativity. A
// re-validation failure here would contradict the transfer argument, so it
// is treated as an internal error rather than an input error.
inline SymmetrizedSolution amalgamation_symmetrize(const AmalgamationCone& cone) {
    if (cone.maps.size() != cone.targets.size())
        throw std::invalid_argument("amalgamation_symmetrize: one map per target required");
    for (size_t i = 0; i < cone.targets.size(); ++i) {
        if (!classify(cone.targets[i]).is_graph)
            throw std::invalid_argument("amalgamation_symmetrize: target " + std::to_string(i) +
                                        " is not a reflexive graph");
        auto pre = check(cone.maps[i], OrderedStructure(Structure(cone.apex)),
                         OrderedStructure(Structure(cone.targets[i])), MorphismKind::quotient);
        if (!pre.ok)
            throw std::invalid_argument("amalgamation_symmetrize: map " + std::to_string(i) +
                                        " is not a quotient of digraphs: " + pre.reason);
    }
    for (const auto& a : cone.arrows) {
        const auto& f_from = cone.maps.at(a.from);
        const auto& f_to = cone.maps.at(a.to);
        for (size_t v = 0; v < f_from.size(); ++v)
            if (a.h.at(f_from[v]) != f_to[v])
                throw std::invalid_argument("amalgamation_symmetrize: diagram does not commute");
    }

    SymmetrizedSolution sol{symmetrize(cone.apex), cone.maps, 0};
    for (size_t i = 0; i < cone.targets.size(); ++i) {
        auto post = check(sol.maps[i], OrderedStructure(Structure(sol.apex)),
                          OrderedStructure(Structure(cone.targets[i])), MorphismKind::quotient);
        if (!post.ok)
            throw std::logic_error("amalgamation_symmetrize: map stopped being a quotient after "
                                   "symmetrization: " +
                                   post.reason);
        ++sol.revalidated;
    }
    return sol;
}

}  // namespace ramseyforge
