#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ramseyforge/structures.hpp"

namespace ramseyforge {

// Thrown when an exhaustive search exceeds its configured budget. `bound`
// names the limit that tripped so callers can report it.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, std::string bound)
        : std::runtime_error(what), bound_(std::move(bound)) {}
    const std::string& bound() const { return bound_; }

private:
    std::string bound_;
};

enum class MorphismKind {
    hom,
    surjective_hom,
    embedding,
    quotient,
    rigid_surjection,
    nonexpansive_surjection,
    nonexpansive_rigid_surjection,
    quotient_rigid_surjection,
    quotient_rigid_map,
};

inline const char* kind_name(MorphismKind k) {
    switch (k) {
        case MorphismKind::hom: return "hom";
        case MorphismKind::surjective_hom: return "surjective_hom";
        case MorphismKind::embedding: return "embedding";
        case MorphismKind::quotient: return "quotient";
        case MorphismKind::rigid_surjection: return "rigid_surjection";
        case MorphismKind::nonexpansive_surjection: return "nonexpansive_surjection";
        case MorphismKind::nonexpansive_rigid_surjection: return "nonexpansive_rigid_surjection";
        case MorphismKind::quotient_rigid_surjection: return "quotient_rigid_surjection";
        case MorphismKind::quotient_rigid_map: return "quotient_rigid_map";
    }
    return "?";
}

inline MorphismKind kind_from_name(const std::string& s) {
    for (MorphismKind k :
         {MorphismKind::hom, MorphismKind::surjective_hom, MorphismKind::embedding,
          MorphismKind::quotient, MorphismKind::rigid_surjection,
          MorphismKind::nonexpansive_surjection, MorphismKind::nonexpansive_rigid_surjection,
          MorphismKind::quotient_rigid_surjection, MorphismKind::quotient_rigid_map})
        if (s == kind_name(k)) return k;
    if (s == "rigid") return MorphismKind::rigid_surjection;
    throw std::invalid_argument("unknown morphism kind '" + s + "'");
}

// A total map between structure carriers, tagged with the class it was
// validated for.
struct Morphism {
    int dom_size = 0;
    int cod_size = 0;
    std::vector<int> map;
    MorphismKind kind = MorphismKind::hom;

    friend bool operator==(const Morphism& a, const Morphism& b) {
        return a.dom_size == b.dom_size && a.cod_size == b.cod_size && a.map == b.map &&
               a.kind == b.kind;
    }
};

// A structure together with the expansions a morphism class may need:
// a vertex order (metric rigid kinds) or an edge order (digraph rigid kinds).
struct OrderedStructure {
    Structure s;
    std::optional<LinearOrder> vertex_order;
    std::optional<EdgeOrder> edge_order;

    OrderedStructure(Structure st) : s(std::move(st)) {}
    OrderedStructure(Structure st, LinearOrder vo)
        : s(std::move(st)), vertex_order(std::move(vo)) {}
    OrderedStructure(Structure st, EdgeOrder eo) : s(std::move(st)), edge_order(std::move(eo)) {}

    int size() const { return structure_size(s); }
    const Chain* chain() const { return std::get_if<Chain>(&s); }
    const ReflexiveDigraph* digraph() const { return std::get_if<ReflexiveDigraph>(&s); }
    const MetricSpace* metric() const { return std::get_if<MetricSpace>(&s); }
};

struct CheckResult {
    bool ok = true;
    std::string reason;
    std::vector<int> witness;  // concrete offending tuple, empty on success

    static CheckResult pass() { return {}; }
    static CheckResult fail(std::string why, std::vector<int> w = {}) {
        return {false, std::move(why), std::move(w)};
    }
};

namespace detail {

inline void require_sizes(const std::vector<int>& f, int dom, int cod) {
    if (static_cast<int>(f.size()) != dom)
        throw std::invalid_argument("morphism map length != domain size");
    for (int v : f)
        if (v < 0 || v >= cod) throw std::invalid_argument("morphism map value out of codomain");
}

inline bool is_surjective(const std::vector<int>& f, int cod) {
    std::vector<bool> hit(cod, false);
    for (int v : f) hit[v] = true;
    for (bool b : hit)
        if (!b) return false;
    return true;
}

// Rigid surjection between two linearly ordered carriers: minima of
// preimages must appear in codomain order.
inline CheckResult check_rigid(const std::vector<int>& f, const LinearOrder& dom_order,
                               const LinearOrder& cod_order) {
    const int cod = cod_order.size();
    if (!is_surjective(f, cod)) return CheckResult::fail("not surjective");
    std::vector<int> min_pos(cod, -1);
    for (int k = 0; k < dom_order.size(); ++k) {
        int b = f[dom_order.perm[k]];
        if (min_pos[b] < 0) min_pos[b] = k;
    }
    for (int r = 0; r + 1 < cod; ++r) {
        int b1 = cod_order.perm[r], b2 = cod_order.perm[r + 1];
        if (!(min_pos[b1] < min_pos[b2]))
            return CheckResult::fail("min-preimages out of codomain order",
                                     {b1, b2, min_pos[b1], min_pos[b2]});
    }
    return CheckResult::pass();
}

// Chains viewed as the reflexive relation x <= y.
inline bool chain_rel(int x, int y) { return x <= y; }

inline CheckResult check_preserve_digraph(const std::vector<int>& f, const ReflexiveDigraph& X,
                                          const ReflexiveDigraph& Y) {
    for (int x = 0; x < X.size(); ++x)
        for (int y = 0; y < X.size(); ++y)
            if (X.edge(x, y) && !Y.edge(f[x], f[y]))
                return CheckResult::fail("edge not preserved", {x, y});
    return CheckResult::pass();
}

inline CheckResult check_reflect_digraph(const std::vector<int>& f, const ReflexiveDigraph& X,
                                         const ReflexiveDigraph& Y) {
    // All structures here are binary, so reflection scans codomain pairs with
    // both ends in the image and hunts a preimage edge.
    std::set<Edge> image_edges;
    for (int x = 0; x < X.size(); ++x)
        for (int y = 0; y < X.size(); ++y)
            if (X.edge(x, y)) image_edges.insert({f[x], f[y]});
    std::vector<bool> in_image(Y.size(), false);
    for (int v : f) in_image[v] = true;
    for (int a = 0; a < Y.size(); ++a)
        for (int b = 0; b < Y.size(); ++b)
            if (in_image[a] && in_image[b] && Y.edge(a, b) && !image_edges.count({a, b}))
                return CheckResult::fail("codomain edge not reflected", {a, b});
    return CheckResult::pass();
}

inline CheckResult check_preserve_chain(const std::vector<int>& f, int, int) {
    for (size_t x = 0; x < f.size(); ++x)
        for (size_t y = x; y < f.size(); ++y)
            if (chain_rel(static_cast<int>(x), static_cast<int>(y)) && !chain_rel(f[x], f[y]))
                return CheckResult::fail("order not preserved", {static_cast<int>(x), static_cast<int>(y)});
    return CheckResult::pass();
}

inline CheckResult check_reflect_chain(const std::vector<int>& f, int, int cod) {
    std::vector<bool> in_image(cod, false);
    for (int v : f) in_image[v] = true;
    for (int a = 0; a < cod; ++a)
        for (int b = a; b < cod; ++b) {
            if (!in_image[a] || !in_image[b]) continue;
            bool found = false;
            for (size_t x = 0; x < f.size() && !found; ++x)
                for (size_t y = x; y < f.size() && !found; ++y)
                    if (f[x] == a && f[y] == b) found = true;
            if (!found) return CheckResult::fail("codomain pair not reflected", {a, b});
        }
    return CheckResult::pass();
}

inline CheckResult check_nonexpansive(const std::vector<int>& f, const MetricSpace& X,
                                      const MetricSpace& Y) {
    for (int x = 0; x < X.size(); ++x)
        for (int y = x + 1; y < X.size(); ++y)
            if (Y.at(f[x], f[y]) > X.at(x, y))
                return CheckResult::fail("distance expanded", {x, y});
    return CheckResult::pass();
}

}  // namespace detail

// f-hat: coordinatewise application of f to a sequence of edges.
inline std::vector<Edge> edge_map_images(const std::vector<int>& f, const std::vector<Edge>& dom_edges) {
    std::vector<Edge> out;
    out.reserve(dom_edges.size());
    for (const Edge& e : dom_edges) out.push_back({f[e.first], f[e.second]});
    return out;
}

// The induced edge map of a homomorphism, listed along X's edge sequence.
// Raises if f is not a homomorphism X -> Y.
inline std::vector<Edge> edge_map(const std::vector<int>& f, const ReflexiveDigraph& X,
                                  const ReflexiveDigraph& Y) {
    detail::require_sizes(f, X.size(), Y.size());
    auto pres = detail::check_preserve_digraph(f, X, Y);
    if (!pres.ok) throw std::invalid_argument("edge_map: f is not a homomorphism");
    return edge_map_images(f, X.edges());
}

namespace detail {

// Rigid-surjection check for the edge map of a digraph morphism.
// Orders are given as explicit edge sequences on each side.
inline CheckResult check_edge_rigid(const std::vector<int>& f, const EdgeOrder& xo,
                                    const EdgeOrder& yo, bool require_surjective) {
    std::map<Edge, int> first_pos;
    for (int i = 0; i < xo.size(); ++i) {
        Edge img = {f[xo.edges[i].first], f[xo.edges[i].second]};
        if (!first_pos.count(img)) first_pos[img] = i;
    }
    int last = -1;
    for (int r = 0; r < yo.size(); ++r) {
        auto it = first_pos.find(yo.edges[r]);
        if (it == first_pos.end()) {
            if (require_surjective)
                return CheckResult::fail("edge map not surjective onto codomain edge order",
                                         {yo.edges[r].first, yo.edges[r].second});
            continue;  // rigid map: only the image must be rigidly ordered
        }
        if (it->second <= last)
            return CheckResult::fail("edge-map min-preimages out of order",
                                     {yo.edges[r].first, yo.edges[r].second, it->second, last});
        last = it->second;
    }
    // Every image edge must actually occur in the codomain order.
    for (const auto& [img, pos] : first_pos)
        if (!yo.index_of(img))
            return CheckResult::fail("image edge missing from codomain order", {img.first, img.second});
    return CheckResult::pass();
}

}  // namespace detail

// Decides the definitional predicate of `kind` for the map f : X -> Y.
// Orders must be supplied exactly when the kind mentions rigidity or edge
// orders; a missing order is a parameter error, not a failed check.
inline CheckResult check(const std::vector<int>& f, const OrderedStructure& X,
                         const OrderedStructure& Y, MorphismKind kind) {
    detail::require_sizes(f, X.size(), Y.size());

    auto vertex_order_of = [](const OrderedStructure& o, const char* side) -> LinearOrder {
        if (o.chain()) return LinearOrder::identity(o.size());
        if (o.vertex_order) return *o.vertex_order;
        throw std::invalid_argument(std::string("rigid kind needs a vertex order on ") + side);
    };

    switch (kind) {
        case MorphismKind::rigid_surjection:
            return detail::check_rigid(f, vertex_order_of(X, "domain"), vertex_order_of(Y, "codomain"));

        case MorphismKind::hom:
        case MorphismKind::surjective_hom:
        case MorphismKind::embedding:
        case MorphismKind::quotient: {
            CheckResult pres, refl;
            bool injective_needed = (kind == MorphismKind::embedding);
            if (X.chain() && Y.chain()) {
                pres = detail::check_preserve_chain(f, X.size(), Y.size());
                if (kind == MorphismKind::embedding || kind == MorphismKind::quotient)
                    refl = detail::check_reflect_chain(f, X.size(), Y.size());
            } else if (X.digraph() && Y.digraph()) {
                pres = detail::check_preserve_digraph(f, *X.digraph(), *Y.digraph());
                if (kind == MorphismKind::embedding || kind == MorphismKind::quotient)
                    refl = detail::check_reflect_digraph(f, *X.digraph(), *Y.digraph());
            } else if (X.metric() && Y.metric()) {
                // For metric spaces the homomorphism notion is non-expansiveness;
                // embeddings are isometric.
                if (kind == MorphismKind::quotient)
                    throw std::invalid_argument("quotient is not defined for metric spaces here");
                if (kind == MorphismKind::embedding) {
                    for (int x = 0; x < X.size(); ++x)
                        for (int y = x + 1; y < X.size(); ++y)
                            if (Y.metric()->at(f[x], f[y]) != X.metric()->at(x, y))
                                return CheckResult::fail("not isometric", {x, y});
                    return CheckResult::pass();
                }
                pres = detail::check_nonexpansive(f, *X.metric(), *Y.metric());
            } else {
                throw std::invalid_argument("check: mismatched structure families");
            }
            if (!pres.ok) return pres;
            if (!refl.ok) return refl;
            if (injective_needed) {
                std::set<int> vals(f.begin(), f.end());
                if (static_cast<int>(vals.size()) != static_cast<int>(f.size()))
                    return CheckResult::fail("not injective");
            }
            if ((kind == MorphismKind::surjective_hom || kind == MorphismKind::quotient) &&
                !detail::is_surjective(f, Y.size()))
                return CheckResult::fail("not surjective");
            return CheckResult::pass();
        }

        case MorphismKind::nonexpansive_surjection: {
            if (!X.metric() || !Y.metric())
                throw std::invalid_argument("nonexpansive_surjection needs metric spaces");
            if (!detail::is_surjective(f, Y.size())) return CheckResult::fail("not surjective");
            return detail::check_nonexpansive(f, *X.metric(), *Y.metric());
        }

        case MorphismKind::nonexpansive_rigid_surjection: {
            if (!X.metric() || !Y.metric())
                throw std::invalid_argument("nonexpansive_rigid_surjection needs metric spaces");
            auto ne = check(f, X, Y, MorphismKind::nonexpansive_surjection);
            if (!ne.ok) return ne;
            return detail::check_rigid(f, vertex_order_of(X, "domain"), vertex_order_of(Y, "codomain"));
        }

        case MorphismKind::quotient_rigid_surjection: {
            if (!X.digraph() || !Y.digraph())
                throw std::invalid_argument("quotient_rigid_surjection needs digraphs");
            if (!X.edge_order || !Y.edge_order)
                throw std::invalid_argument("quotient_rigid_surjection needs edge orders on both sides");
            if (!X.edge_order->is_tidy(*X.digraph()) || !Y.edge_order->is_tidy(*Y.digraph()))
                throw std::invalid_argument("quotient_rigid_surjection needs tidy edge orders");
            auto q = check(f, X, Y, MorphismKind::quotient);
            if (!q.ok) return q;
            return detail::check_edge_rigid(f, *X.edge_order, *Y.edge_order, true);
        }

        case MorphismKind::quotient_rigid_map: {
            // Finite truncation of the infinite-side convention: the domain
            // orders its non-loops only, the (finite) codomain is tidy.
            if (!X.digraph() || !Y.digraph())
                throw std::invalid_argument("quotient_rigid_map needs digraphs");
            if (!X.edge_order || !Y.edge_order)
                throw std::invalid_argument("quotient_rigid_map needs edge orders on both sides");
            if (!X.edge_order->covers_non_loops(*X.digraph()))
                throw std::invalid_argument("quotient_rigid_map: domain order must list exactly the non-loops");
            if (!Y.edge_order->is_tidy(*Y.digraph()))
                throw std::invalid_argument("quotient_rigid_map: codomain order must be tidy");
            auto q = check(f, X, Y, MorphismKind::quotient);
            if (!q.ok) return q;
            return detail::check_edge_rigid(f, *X.edge_order, *Y.edge_order, false);
        }
    }
    throw std::logic_error("unreachable kind");
}

struct EnumBudget {
    std::uint64_t max_results = std::uint64_t{1} << 20;
    std::uint64_t max_nodes = std::uint64_t{1} << 26;
};

namespace detail {

struct EnumState {
    const OrderedStructure& X;
    const OrderedStructure& Y;
    MorphismKind kind;
    EnumBudget budget;
    std::uint64_t nodes = 0;
    std::vector<int> f;
    std::vector<int> hits;  // per codomain value
    int covered = 0;
    std::vector<Morphism>* out;
};

// Sound partial feasibility test for position `pos` just assigned.
inline bool partial_ok(EnumState& st, int pos) {
    const auto& f = st.f;
    int v = f[pos];
    switch (st.kind) {
        case MorphismKind::hom:
        case MorphismKind::surjective_hom:
        case MorphismKind::embedding:
        case MorphismKind::quotient:
        case MorphismKind::quotient_rigid_surjection:
        case MorphismKind::quotient_rigid_map:
            if (st.X.chain())
                return pos == 0 || f[pos - 1] <= v;
            if (st.X.digraph()) {
                const auto& dx = *st.X.digraph();
                const auto& dy = *st.Y.digraph();
                for (int u = 0; u <= pos; ++u) {
                    if (dx.edge(u, pos) && !dy.edge(f[u], v)) return false;
                    if (dx.edge(pos, u) && !dy.edge(v, f[u])) return false;
                }
                return true;
            }
            if (st.X.metric()) {
                const auto& mx = *st.X.metric();
                const auto& my = *st.Y.metric();
                for (int u = 0; u < pos; ++u)
                    if (my.at(f[u], v) > mx.at(u, pos)) return false;
                return true;
            }
            return true;
        case MorphismKind::rigid_surjection:
            // On chains the canonical domain order is positional, so a new
            // codomain value may only appear as the next unseen one.
            if (st.X.chain() && st.Y.chain()) return st.hits[v] > 1 || v == st.covered - 1;
            return true;
        case MorphismKind::nonexpansive_surjection:
        case MorphismKind::nonexpansive_rigid_surjection: {
            const auto& mx = *st.X.metric();
            const auto& my = *st.Y.metric();
            for (int u = 0; u < pos; ++u)
                if (my.at(f[u], v) > mx.at(u, pos)) return false;
            return true;
        }
    }
    return true;
}

inline bool needs_surjectivity(MorphismKind k) {
    switch (k) {
        case MorphismKind::hom:
        case MorphismKind::embedding: return false;
        default: return true;
    }
}

inline void enumerate_rec(EnumState& st, int pos) {
    const int dom = st.X.size(), cod = st.Y.size();
    if (pos == dom) {
        if (check(st.f, st.X, st.Y, st.kind).ok) {
            if (st.out->size() + 1 > st.budget.max_results)
                throw BudgetError("morphism enumeration exceeded result budget", "max_results");
            st.out->push_back(Morphism{dom, cod, st.f, st.kind});
        }
        return;
    }
    for (int v = 0; v < cod; ++v) {
        if (++st.nodes > st.budget.max_nodes)
            throw BudgetError("morphism enumeration exceeded node budget", "max_nodes");
        if (needs_surjectivity(st.kind)) {
            int missing = cod - st.covered - (st.hits[v] == 0 ? 1 : 0);
            if (missing > dom - pos - 1) continue;
        }
        st.f[pos] = v;
        ++st.hits[v];
        if (st.hits[v] == 1) ++st.covered;
        if (partial_ok(st, pos)) enumerate_rec(st, pos + 1);
        --st.hits[v];
        if (st.hits[v] == 0) --st.covered;
        st.f[pos] = -1;
    }
}

}  // namespace detail

// All morphisms X -> Y of the given class, in lexicographic order of the map
// array. Deterministic across runs and worker counts.
inline std::vector<Morphism> enumerate_morphisms(const OrderedStructure& X,
                                                 const OrderedStructure& Y, MorphismKind kind,
                                                 const EnumBudget& budget = {}) {
    // Surface parameter errors (missing orders, family mismatch) up front;
    // pruning could otherwise hide them behind an empty result.
    check(std::vector<int>(X.size(), 0), X, Y, kind);
    std::vector<Morphism> out;
    detail::EnumState st{X, Y, kind, budget, 0, std::vector<int>(X.size(), -1),
                         std::vector<int>(Y.size(), 0), 0, &out};
    detail::enumerate_rec(st, 0);
    return out;
}

// Pointwise composition g . f (apply f first). The result keeps the common
// kind when that class is composition-closed, else downgrades to hom.
inline Morphism compose(const Morphism& g, const Morphism& f) {
    if (f.cod_size != g.dom_size) throw std::invalid_argument("compose: cod(f) != dom(g)");
    Morphism r;
    r.dom_size = f.dom_size;
    r.cod_size = g.cod_size;
    r.map.resize(f.map.size());
    for (size_t i = 0; i < f.map.size(); ++i) r.map[i] = g.map[f.map[i]];
    if (f.kind == g.kind) {
        switch (f.kind) {
            case MorphismKind::quotient_rigid_map:
                r.kind = MorphismKind::quotient;  // rigid-map part is not closed under restriction
                break;
            default: r.kind = f.kind; break;
        }
    } else {
        r.kind = MorphismKind::hom;
    }
    return r;
}

// The unique codomain order making a surjection rigid: codomain elements
// sorted by the domain-order minimum of their preimages.
inline LinearOrder induced_dual_restriction(const std::vector<int>& f, int cod_size,
                                            const LinearOrder& dom_order) {
    if (!detail::is_surjective(f, cod_size))
        throw std::invalid_argument("induced_dual_restriction: map is not surjective");
    std::vector<int> min_pos(cod_size, -1);
    for (int k = 0; k < dom_order.size(); ++k) {
        int b = f[dom_order.perm[k]];
        if (min_pos[b] < 0) min_pos[b] = k;
    }
    std::vector<int> perm(cod_size);
    for (int i = 0; i < cod_size; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return min_pos[a] < min_pos[b]; });
    return LinearOrder(std::move(perm));
}

struct EdgeDualRestriction {
    EdgeOrder order;
    bool tidy = false;      // loops listed before non-loops in the result
    bool surjective = false;  // result covers the full codomain edge set
};

// Edge variant: orders the image edges of f-hat by first occurrence along the
// domain edge order. With `require_surjective` the image must be the whole
// codomain edge set (the quotient-rigid-surjection situation); without it the
// result orders im(f-hat) only (the quotient-rigid-map situation).
inline EdgeDualRestriction induced_dual_edge_restriction(const std::vector<int>& f,
                                                         const EdgeOrder& dom_order,
                                                         const ReflexiveDigraph& Y,
                                                         bool require_surjective) {
    std::vector<Edge> seq;
    std::set<Edge> seen;
    for (const Edge& e : dom_order.edges) {
        Edge img = {f[e.first], f[e.second]};
        if (!Y.edge(img.first, img.second))
            throw std::invalid_argument("induced_dual_edge_restriction: image pair is not an edge");
        if (seen.insert(img).second) seq.push_back(img);
    }
    EdgeDualRestriction r;
    r.order = EdgeOrder(std::move(seq));
    r.surjective = r.order.covers_all_edges(Y);
    if (require_surjective && !r.surjective)
        throw std::invalid_argument("induced_dual_edge_restriction: edge map is not surjective");
    r.tidy = r.order.loops_first() && (!require_surjective || r.surjective);
    return r;
}

}  // namespace ramseyforge
