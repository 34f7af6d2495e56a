#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ramseyforge/expansions.hpp"
#include "ramseyforge/morphisms.hpp"

namespace ramseyforge {

// A reflexive digraph with a tidy listing of its edges.
struct EdgeOrderedDigraph {
    ReflexiveDigraph digraph;
    EdgeOrder order;

    EdgeOrderedDigraph(ReflexiveDigraph d, EdgeOrder o)
        : digraph(std::move(d)), order(std::move(o)) {
        if (!order.is_tidy(digraph))
            throw std::invalid_argument("EdgeOrderedDigraph: order must be tidy and cover the edge set");
    }

    OrderedStructure as_ordered() const { return OrderedStructure(Structure(digraph), order); }
};

// The object map F: the edge chain of D*, positions labeled by edges.
struct EdgeChain {
    Chain chain;
    std::vector<Edge> labels;
};

inline EdgeChain F_edges(const EdgeOrderedDigraph& dstar) {
    return EdgeChain{Chain(dstar.order.size()), dstar.order.edges};
}

// The object map G: the edge-ordered n copies of A_2 on vertex set
// {0,1} x X, vertex (i, x_j) encoded as 2j+i. Loops are listed copy by
// copy, then the cross edges e_1, ..., e_n.
inline EdgeOrderedDigraph G_chain(int n) {
    if (n < 1) throw std::invalid_argument("G_chain: need n >= 1");
    ReflexiveDigraph d = build_copies_of_a2(n);
    std::vector<Edge> seq;
    for (int v = 0; v < 2 * n; ++v) seq.emplace_back(v, v);
    for (int j = 0; j < n; ++j) seq.emplace_back(2 * j, 2 * j + 1);
    return EdgeOrderedDigraph(std::move(d), EdgeOrder(std::move(seq)));
}

// The hom-set translation Phi_{D,X}: a rigid surjection u from the chain X
// into the edge chain of D* becomes a vertex map G(X) -> D*. Copy i of A_2
// lands on the endpoints of the edge u(x_i): both vertices on the loop's
// vertex, or head/tail of a non-loop. The output is re-validated as a
// quotient rigid surjection rather than trusted; this doubles as a
// regression check of the morphism engine.
inline Morphism preadjunction_phi(const std::vector<int>& u, int x_size,
                                  const EdgeOrderedDigraph& dstar) {
    EdgeChain fd = F_edges(dstar);
    detail::require_sizes(u, x_size, fd.chain.size);
    auto rigid = check(u, OrderedStructure(Structure(Chain(x_size))),
                       OrderedStructure(Structure(fd.chain)), MorphismKind::rigid_surjection);
    if (!rigid.ok)
        throw std::invalid_argument("preadjunction_phi: u is not a rigid surjection into the edge chain: " +
                                    rigid.reason);

    Morphism out;
    out.dom_size = 2 * x_size;
    out.cod_size = dstar.digraph.size();
    out.kind = MorphismKind::quotient_rigid_surjection;
    out.map.resize(2 * x_size);
    for (int i = 0; i < x_size; ++i) {
        Edge e = fd.labels[u[i]];
        out.map[2 * i] = e.first;
        out.map[2 * i + 1] = e.second;
    }

    EdgeOrderedDigraph gx = G_chain(x_size);
    auto post = check(out.map, gx.as_ordered(), dstar.as_ordered(),
                      MorphismKind::quotient_rigid_surjection);
    if (!post.ok)
        throw std::logic_error("preadjunction_phi: output failed the quotient rigid surjection check: " +
                               post.reason);
    return out;
}

struct PaCheckResult {
    bool holds = false;
    int first_disagreement = -1;  // vertex of G(X) where the two sides differ
    bool composite_rigid = true;  // f-hat . u passed the rigid check
};

// Condition (PA) at a concrete instance: f . Phi_{D,X}(u) must equal
// Phi_{E,X}(f-hat . u) as raw vertex maps.
inline PaCheckResult verify_pa(const std::vector<int>& u, int x_size,
                               const EdgeOrderedDigraph& dstar, const std::vector<int>& f,
                               const EdgeOrderedDigraph& estar) {
    auto fk = check(f, dstar.as_ordered(), estar.as_ordered(),
                    MorphismKind::quotient_rigid_surjection);
    if (!fk.ok)
        throw std::invalid_argument("verify_pa: f is not a quotient rigid surjection: " + fk.reason);

    Morphism lhs_inner = preadjunction_phi(u, x_size, dstar);
    std::vector<int> lhs(lhs_inner.map.size());
    for (size_t i = 0; i < lhs.size(); ++i) lhs[i] = f[lhs_inner.map[i]];

    // f-hat . u as a map into the edge chain of E*.
    EdgeChain fd = F_edges(dstar);
    std::vector<int> composite(x_size);
    for (int i = 0; i < x_size; ++i) {
        Edge e = fd.labels[u[i]];
        Edge img{f[e.first], f[e.second]};
        auto idx = estar.order.index_of(img);
        if (!idx) throw std::logic_error("verify_pa: image edge missing from E* order");
        composite[i] = *idx;
    }

    PaCheckResult r;
    auto comp_rigid = check(composite, OrderedStructure(Structure(Chain(x_size))),
                            OrderedStructure(Structure(Chain(estar.order.size()))),
                            MorphismKind::rigid_surjection);
    if (!comp_rigid.ok) {
        // Distinct diagnostic: this would falsify closure of rigid
        // surjections under composition, not just (PA).
        r.composite_rigid = false;
        r.holds = false;
        return r;
    }

    std::vector<int> rhs = preadjunction_phi(composite, x_size, estar).map;
    r.holds = true;
    for (size_t i = 0; i < lhs.size(); ++i)
        if (lhs[i] != rhs[i]) {
            r.holds = false;
            r.first_disagreement = static_cast<int>(i);
            break;
        }
    return r;
}

struct PaSweepReport {
    std::uint64_t instances = 0;
    std::uint64_t failures = 0;
    std::uint64_t composite_rigid_failures = 0;
    int max_x = 0;

    bool clean() const { return failures == 0 && composite_rigid_failures == 0; }
};

// Exhaustive (PA) sweep: X over chain sizes 1..max_x, D* over every tidy
// expansion of A_2 and 2.A_2, u over every rigid surjection X -> F(D*),
// f over every quotient rigid surjection from D* to every tidy expansion
// of every reflexive digraph on at most two vertices.
inline PaSweepReport pa_sweep(int max_x, const EnumBudget& budget = {}) {
    PaSweepReport rep;
    rep.max_x = max_x;

    std::vector<ReflexiveDigraph> bases{build_copies_of_a2(1), build_copies_of_a2(2)};
    std::vector<ReflexiveDigraph> targets;
    targets.push_back(ReflexiveDigraph(1));
    for (int mask = 0; mask < 4; ++mask) {
        ReflexiveDigraph e(2);
        if (mask & 1) e.add_edge(0, 1);
        if (mask & 2) e.add_edge(1, 0);
        targets.push_back(std::move(e));
    }

    for (const auto& base : bases) {
        for (const auto& base_order : tidy_edge_order_fibers(base)) {
            EdgeOrderedDigraph dstar(base, base_order);
            EdgeChain fd = F_edges(dstar);

            std::vector<std::pair<std::vector<int>, EdgeOrderedDigraph>> fs;
            for (const auto& target : targets)
                for (const auto& target_order : tidy_edge_order_fibers(target)) {
                    EdgeOrderedDigraph estar(target, target_order);
                    for (const auto& f : enumerate_morphisms(dstar.as_ordered(), estar.as_ordered(),
                                                             MorphismKind::quotient_rigid_surjection,
                                                             budget))
                        fs.emplace_back(f.map, estar);
                }

            for (int x = 1; x <= max_x; ++x) {
                auto us = enumerate_morphisms(OrderedStructure(Structure(Chain(x))),
                                              OrderedStructure(Structure(fd.chain)),
                                              MorphismKind::rigid_surjection, budget);
                for (const auto& u : us)
                    for (const auto& [f, estar] : fs) {
                        PaCheckResult r = verify_pa(u.map, x, dstar, f, estar);
                        ++rep.instances;
                        if (!r.composite_rigid) ++rep.composite_rigid_failures;
                        if (r.composite_rigid && !r.holds) ++rep.failures;
                    }
            }
        }
    }
    return rep;
}

struct UniversalCover {
    int copies = 0;
    ReflexiveDigraph cover;
    Morphism q;
};

// One copy of A_2 per edge of D: the cross edge of copy e lands on the
// endpoints of e (both on the vertex for a loop). The finite witness that
// disjoint copies of A_2 project onto everything; validated as a quotient.
inline UniversalCover universal_cover(const ReflexiveDigraph& d) {
    auto edges = canonical_tidy_order(d).edges;
    int m = static_cast<int>(edges.size());
    UniversalCover uc{m, build_copies_of_a2(m), Morphism{}};
    uc.q.dom_size = 2 * m;
    uc.q.cod_size = d.size();
    uc.q.kind = MorphismKind::quotient;
    uc.q.map.resize(2 * m);
    for (int e = 0; e < m; ++e) {
        uc.q.map[2 * e] = edges[e].first;
        uc.q.map[2 * e + 1] = edges[e].second;
    }
    auto res = check(uc.q.map, OrderedStructure(Structure(uc.cover)),
                     OrderedStructure(Structure(d)), MorphismKind::quotient);
    if (!res.ok)
        throw std::logic_error("universal_cover: construction failed the quotient check: " + res.reason);
    return uc;
}

}  // namespace ramseyforge
