#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ramseyforge/rational.hpp"

namespace ramseyforge {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

inline bool is_loop(const Edge& e) { return e.first == e.second; }

// A finite linearly ordered set with elements 0 < 1 < ... < size-1.
struct Chain {
    int size = 1;

    explicit Chain(int n = 1) : size(n) {
        if (n < 1) throw std::invalid_argument("Chain: size must be >= 1");
    }
    friend bool operator==(const Chain& a, const Chain& b) { return a.size == b.size; }
};

// Reflexive digraph on vertices 0..n-1, adjacency kept as bitset rows.
// Every vertex carries a loop; the loop bits are set at construction and
// never cleared. The vertex cap keeps exhaustive searches at desk scale.
class ReflexiveDigraph {
public:
    static constexpr int kMaxVertices = 64;

    explicit ReflexiveDigraph(int n) : n_(n), rows_(static_cast<size_t>(n), 0) {
        if (n < 1) throw std::invalid_argument("ReflexiveDigraph: need >= 1 vertex");
        if (n > kMaxVertices) throw std::invalid_argument("ReflexiveDigraph: vertex cap is 64");
        for (int v = 0; v < n; ++v) rows_[v] = bit(v);
    }

    int size() const { return n_; }

    bool edge(Vertex x, Vertex y) const {
        check_vertex(x);
        check_vertex(y);
        return (rows_[x] & bit(y)) != 0;
    }

    void add_edge(Vertex x, Vertex y) {
        check_vertex(x);
        check_vertex(y);
        rows_[x] |= bit(y);
    }

    std::uint64_t row(Vertex x) const {
        check_vertex(x);
        return rows_[x];
    }

    // Edges in row-major order: (0,0),(0,1),...,(n-1,n-1) filtered to present.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y)
                if (edge(x, y)) out.emplace_back(x, y);
        return out;
    }

    std::vector<Edge> loops() const {
        std::vector<Edge> out;
        for (int v = 0; v < n_; ++v) out.emplace_back(v, v);
        return out;
    }

    std::vector<Edge> non_loops() const {
        std::vector<Edge> out;
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y)
                if (x != y && edge(x, y)) out.emplace_back(x, y);
        return out;
    }

    int non_loop_count() const { return static_cast<int>(non_loops().size()); }

    // No non-loop edge in or out.
    bool is_isolated(Vertex v) const {
        check_vertex(v);
        if (rows_[v] != bit(v)) return false;
        for (int x = 0; x < n_; ++x)
            if (x != v && edge(x, v)) return false;
        return true;
    }

    int isolated_count() const {
        int c = 0;
        for (int v = 0; v < n_; ++v)
            if (is_isolated(v)) ++c;
        return c;
    }

    friend bool operator==(const ReflexiveDigraph& a, const ReflexiveDigraph& b) {
        return a.n_ == b.n_ && a.rows_ == b.rows_;
    }

private:
    static std::uint64_t bit(int v) { return std::uint64_t{1} << v; }
    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("ReflexiveDigraph: vertex out of range");
    }

    int n_;
    std::vector<std::uint64_t> rows_;
};

struct PropertyFlags {
    bool is_graph = false;
    bool is_oriented = false;
    bool is_acyclic = false;
    bool is_transitive = false;
    bool is_poset = false;
    bool is_tournament = false;
};

namespace detail {
inline bool has_directed_cycle(const ReflexiveDigraph& d) {
    // Cycle hunt over non-loop edges only; colors 0 unseen / 1 on stack / 2 done.
    const int n = d.size();
    std::vector<int> color(n, 0);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (color[s] != 0) continue;
        stack.push_back(s);
        std::vector<int> iter(n, 0);
        color[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            bool descended = false;
            for (int& w = iter[v]; w < n; ++w) {
                if (w == v || !d.edge(v, w)) continue;
                if (color[w] == 1) return true;
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.push_back(w);
                    descended = true;
                    ++w;
                    break;
                }
            }
            if (!descended) {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}
}  // namespace detail

inline PropertyFlags classify(const ReflexiveDigraph& d) {
    PropertyFlags f;
    const int n = d.size();
    f.is_graph = true;
    f.is_oriented = true;
    f.is_tournament = true;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            bool xy = d.edge(x, y), yx = d.edge(y, x);
            if (xy && !yx) f.is_graph = false;
            if (xy && yx) f.is_oriented = false;
            if (xy == yx) f.is_tournament = false;
        }
    }
    f.is_acyclic = !detail::has_directed_cycle(d);
    f.is_transitive = true;
    for (int x = 0; x < n && f.is_transitive; ++x)
        for (int y = 0; y < n && f.is_transitive; ++y) {
            if (!d.edge(x, y)) continue;
            for (int z = 0; z < n; ++z)
                if (d.edge(y, z) && !d.edge(x, z)) {
                    f.is_transitive = false;
                    break;
                }
        }
    f.is_poset = f.is_acyclic && f.is_transitive;
    return f;
}

// Finite metric space over exact rationals; validity checked at construction.
class MetricSpace {
public:
    MetricSpace(int n, std::vector<Rational> dist) : n_(n), d_(std::move(dist)) {
        if (n < 1) throw std::invalid_argument("MetricSpace: need >= 1 point");
        if (d_.size() != static_cast<size_t>(n) * n)
            throw std::invalid_argument("MetricSpace: matrix size mismatch");
        for (int i = 0; i < n; ++i) {
            if (!at(i, i).is_zero()) throw std::invalid_argument("MetricSpace: d(i,i) != 0");
            for (int j = 0; j < n; ++j) {
                if (at(i, j) != at(j, i)) throw std::invalid_argument("MetricSpace: not symmetric");
                if (i != j && !(Rational(0) < at(i, j)))
                    throw std::invalid_argument("MetricSpace: nonpositive off-diagonal distance");
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (at(i, k) > at(i, j) + at(j, k))
                        throw std::invalid_argument("MetricSpace: triangle inequality fails");
    }

    static MetricSpace point() { return MetricSpace(1, {Rational(0)}); }

    int size() const { return n_; }
    const Rational& at(int i, int j) const { return d_[static_cast<size_t>(i) * n_ + j]; }

    friend bool operator==(const MetricSpace& a, const MetricSpace& b) {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }

private:
    int n_;
    std::vector<Rational> d_;
};

// Spec(M): the set of off-diagonal distance values, ascending.
inline std::vector<Rational> spectrum(const MetricSpace& m) {
    std::vector<Rational> vals;
    for (int i = 0; i < m.size(); ++i)
        for (int j = i + 1; j < m.size(); ++j) vals.push_back(m.at(i, j));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

// A linear order on 0..n-1; perm[k] is the k-th smallest element.
struct LinearOrder {
    std::vector<int> perm;

    explicit LinearOrder(std::vector<int> p) : perm(std::move(p)) {
        std::vector<bool> seen(perm.size(), false);
        for (int v : perm) {
            if (v < 0 || v >= static_cast<int>(perm.size()) || seen[v])
                throw std::invalid_argument("LinearOrder: not a permutation");
            seen[v] = true;
        }
    }

    static LinearOrder identity(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        return LinearOrder(std::move(p));
    }

    int size() const { return static_cast<int>(perm.size()); }

    // rank()[v] = position of element v.
    std::vector<int> rank() const {
        std::vector<int> r(perm.size());
        for (int k = 0; k < size(); ++k) r[perm[k]] = k;
        return r;
    }

    friend bool operator==(const LinearOrder& a, const LinearOrder& b) { return a.perm == b.perm; }
    friend bool operator<(const LinearOrder& a, const LinearOrder& b) { return a.perm < b.perm; }
};

// A linear listing of (some of) a digraph's edges. Tidy means every loop
// precedes every non-loop and the listing covers the full edge set.
struct EdgeOrder {
    std::vector<Edge> edges;

    EdgeOrder() = default;
    explicit EdgeOrder(std::vector<Edge> e) : edges(std::move(e)) {
        std::set<Edge> seen;
        for (const Edge& x : edges)
            if (!seen.insert(x).second) throw std::invalid_argument("EdgeOrder: duplicate edge");
    }

    int size() const { return static_cast<int>(edges.size()); }

    std::optional<int> index_of(const Edge& e) const {
        for (int i = 0; i < size(); ++i)
            if (edges[i] == e) return i;
        return std::nullopt;
    }

    bool loops_first() const {
        bool seen_non_loop = false;
        for (const Edge& e : edges) {
            if (!is_loop(e))
                seen_non_loop = true;
            else if (seen_non_loop)
                return false;
        }
        return true;
    }

    bool covers_all_edges(const ReflexiveDigraph& d) const {
        auto all = d.edges();
        if (static_cast<int>(all.size()) != size()) return false;
        std::set<Edge> have(edges.begin(), edges.end());
        for (const Edge& e : all)
            if (!have.count(e)) return false;
        return true;
    }

    bool covers_non_loops(const ReflexiveDigraph& d) const {
        auto nl = d.non_loops();
        if (static_cast<int>(nl.size()) != size()) return false;
        std::set<Edge> have(edges.begin(), edges.end());
        for (const Edge& e : nl)
            if (!have.count(e)) return false;
        return true;
    }

    bool is_tidy(const ReflexiveDigraph& d) const { return covers_all_edges(d) && loops_first(); }

    friend bool operator==(const EdgeOrder& a, const EdgeOrder& b) { return a.edges == b.edges; }
    friend bool operator<(const EdgeOrder& a, const EdgeOrder& b) { return a.edges < b.edges; }
};

// Canonical tidy order: loops by vertex, then non-loops lexicographically.
inline EdgeOrder canonical_tidy_order(const ReflexiveDigraph& d) {
    std::vector<Edge> e = d.loops();
    auto nl = d.non_loops();
    e.insert(e.end(), nl.begin(), nl.end());
    return EdgeOrder(std::move(e));
}

inline EdgeOrder canonical_non_loop_order(const ReflexiveDigraph& d) {
    return EdgeOrder(d.non_loops());
}

using Structure = std::variant<Chain, ReflexiveDigraph, MetricSpace>;

inline int structure_size(const Structure& s) {
    return std::visit(
        [](const auto& x) -> int {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Chain>)
                return x.size;
            else
                return x.size();
        },
        s);
}

// ---- canonical generators ----------------------------------------------

inline Chain build_chain(int n) { return Chain(n); }

// A_n: x -> y iff x <= y.
inline ReflexiveDigraph build_acyclic_tournament(int n) {
    ReflexiveDigraph d(n);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) d.add_edge(x, y);
    return d;
}

// Rotational tournament on odd n >= 3: v dominates v+1, ..., v+(n-1)/2 (mod n).
inline ReflexiveDigraph build_rotational_tournament(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("rotational tournament needs odd size >= 3");
    ReflexiveDigraph d(n);
    for (int v = 0; v < n; ++v)
        for (int k = 1; k <= (n - 1) / 2; ++k) d.add_edge(v, (v + k) % n);
    return d;
}

// n disjoint copies of A_2; copy j occupies vertices 2j and 2j+1 with 2j -> 2j+1.
inline ReflexiveDigraph build_copies_of_a2(int n) {
    if (n < 1) throw std::invalid_argument("copies_of_A2: need n >= 1");
    ReflexiveDigraph d(2 * n);
    for (int j = 0; j < n; ++j) d.add_edge(2 * j, 2 * j + 1);
    return d;
}

// E_{n,delta}: n points, every off-diagonal distance equal to delta.
inline MetricSpace build_equilateral(int n, const Rational& delta) {
    if (!(Rational(0) < delta)) throw std::invalid_argument("equilateral: delta must be positive");
    std::vector<Rational> d(static_cast<size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) d[static_cast<size_t>(i) * n + j] = delta;
    return MetricSpace(n, std::move(d));
}

// Omega_n: d(x,y) = max(x,y) for x != y. The 1-point truncation is a lone point.
inline MetricSpace build_omega_truncation(int n) {
    std::vector<Rational> d(static_cast<size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) d[static_cast<size_t>(i) * n + j] = Rational(std::max(i, j));
    return MetricSpace(n, std::move(d));
}

// S => T: disjoint union plus every cross edge from the S block to the T block.
inline ReflexiveDigraph arrow_sum(const ReflexiveDigraph& s, const ReflexiveDigraph& t) {
    int ns = s.size(), nt = t.size();
    ReflexiveDigraph d(ns + nt);
    for (int x = 0; x < ns; ++x)
        for (int y = 0; y < ns; ++y)
            if (s.edge(x, y)) d.add_edge(x, y);
    for (int x = 0; x < nt; ++x)
        for (int y = 0; y < nt; ++y)
            if (t.edge(x, y)) d.add_edge(ns + x, ns + y);
    for (int x = 0; x < ns; ++x)
        for (int y = 0; y < nt; ++y) d.add_edge(x, ns + y);
    return d;
}

// Restriction to X, vertices relabeled preserving label order.
inline ReflexiveDigraph induced_subdigraph(const ReflexiveDigraph& d, std::vector<Vertex> x) {
    if (x.empty()) throw std::invalid_argument("induced_subdigraph: empty vertex set");
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    ReflexiveDigraph r(static_cast<int>(x.size()));
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (d.edge(x[i], x[j])) r.add_edge(static_cast<int>(i), static_cast<int>(j));
    return r;
}

inline MetricSpace induced_submetric(const MetricSpace& m, std::vector<Vertex> x) {
    if (x.empty()) throw std::invalid_argument("induced_submetric: empty point set");
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    int n = static_cast<int>(x.size());
    std::vector<Rational> d(static_cast<size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[static_cast<size_t>(i) * n + j] = m.at(x[i], x[j]);
    return MetricSpace(n, std::move(d));
}

inline Chain induced_subchain(const Chain& c, const std::vector<Vertex>& x) {
    if (x.empty()) throw std::invalid_argument("induced_subchain: empty set");
    std::set<int> s(x.begin(), x.end());
    if (*s.begin() < 0 || *s.rbegin() >= c.size)
        throw std::invalid_argument("induced_subchain: element out of range");
    return Chain(static_cast<int>(s.size()));
}

// adj'[x][y] = adj[x][y] or adj[y][x].
inline ReflexiveDigraph symmetrize(const ReflexiveDigraph& d) {
    ReflexiveDigraph r(d.size());
    for (int x = 0; x < d.size(); ++x)
        for (int y = 0; y < d.size(); ++y)
            if (d.edge(x, y)) {
                r.add_edge(x, y);
                r.add_edge(y, x);
            }
    return r;
}

}  // namespace ramseyforge
