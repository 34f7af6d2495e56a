#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ramseyforge/morphisms.hpp"

namespace ramseyforge {

// ---- universal projection from an Omega truncation ---------------------------

struct UniversalProjection {
    int prefix_len = 1;          // N: the projection is defined on Omega_N
    std::vector<int> q;          // q[i] = index of the image point in M's label order
    std::vector<std::int64_t> plateau_starts;  // n_0 < n_1 < ... < n_{|M|-1}
};

// Builds the non-expansive surjection q : Omega_N -> M by the plateau
// recursion: n_0 = 0 and n_{k+1} = floor(l_{k+1}) + 1 where l_{k+1} is the
// larger of n_k and every pairwise distance among the first k+2 points.
// Taking the least integer above l keeps N minimal. Position i of Omega_N
// maps to the point whose plateau [n_j, n_{j+1}) contains i.
inline UniversalProjection universal_projection(const MetricSpace& m) {
    const int s = m.size();
    UniversalProjection up;
    std::vector<std::int64_t> n(s, 0);
    Rational pair_max(0);
    for (int k = 0; k + 1 < s; ++k) {
        for (int i = 0; i <= k; ++i)
            if (m.at(i, k + 1) > pair_max) pair_max = m.at(i, k + 1);
        Rational ell = pair_max;
        if (Rational(n[k]) > ell) ell = Rational(n[k]);
        n[k + 1] = ell.floor() + 1;
        if (n[k + 1] <= n[k]) throw std::logic_error("universal_projection: plateau did not advance");
    }
    up.plateau_starts = n;
    up.prefix_len = static_cast<int>(n[s - 1] + 1);
    up.q.resize(up.prefix_len);
    int block = 0;
    for (int i = 0; i < up.prefix_len; ++i) {
        while (block + 1 < s && i >= n[block + 1]) ++block;
        up.q[i] = block;
    }

    // Postcondition. The plateau form makes the check O(|M|^2): a pair in
    // distinct plateaus j' < j realizes its minimal right endpoint at n_j.
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < j; ++i)
            if (m.at(i, j) > Rational(n[j]))
                throw std::logic_error("universal_projection: non-expansiveness violated");
    return up;
}

// Full definitional validation against a materialized Omega_N; intended for
// desk-scale prefixes.
inline CheckResult validate_universal_projection(const MetricSpace& m, const UniversalProjection& up) {
    MetricSpace omega = build_omega_truncation(up.prefix_len);
    return check(up.q, OrderedStructure(Structure(omega)), OrderedStructure(Structure(m)),
                 MorphismKind::nonexpansive_surjection);
}

// ---- one refinement step: split by threshold ---------------------------------

// All surjections U -> E_{2,l} that are non-expansive, i.e. all bipartitions
// whose cross-block distances are at least l. Block 0 contains point 0;
// results are in lexicographic order of the map array. May be empty.
inline std::vector<std::vector<int>> split_by_threshold(const MetricSpace& u, const Rational& ell) {
    if (!(Rational(0) < ell)) throw std::invalid_argument("split_by_threshold: threshold must be positive");
    const int n = u.size();
    std::vector<std::vector<int>> out;
    if (n < 2) return out;
    if (n > 30) throw BudgetError("split_by_threshold: too many points", "bipartition_bits");
    const std::uint32_t space = 1u << (n - 1);
    for (std::uint32_t m = 1; m < space; ++m) {
        std::vector<int> f(n, 0);
        for (int i = 1; i < n; ++i) f[i] = (m >> (n - 1 - i)) & 1u;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                if (f[i] != f[j] && u.at(i, j) < ell) ok = false;
        if (ok) out.push_back(std::move(f));
    }
    return out;
}

// ---- self-similarity construction --------------------------------------------

struct SelfSimilarResult {
    std::vector<int> r;  // r[v] for every value v in the prefix
    bool complete = true;  // false would mean the prefix ended mid-plateau
    int image_size = 0;    // r is onto {0, ..., image_size-1}
    std::vector<int> plateau_ends;  // n_0, n_1, ... as positions in the prefix order
};

// Runs the plateau construction for the rigid surjection r witnessing dual
// self-similarity of the ordered Omega: walk the prefix order x_0, x_1, ...,
// close plateau k at the position of the least value not yet passed, and
// send the whole plateau to k. The step invariant n_k >= k is asserted at
// every round; together with r(v) <= v it makes the partial map
// non-expansive and rigid.
inline SelfSimilarResult self_similar_rigid(const LinearOrder& prefix_order) {
    const int n = prefix_order.size();
    std::vector<int> pos_of_value = prefix_order.rank();
    SelfSimilarResult res;
    res.r.assign(n, -1);

    std::vector<bool> passed(n, false);
    int next_min = 0;  // least value not yet passed
    int start = 0;     // first position of the open plateau
    int k = 0;
    while (start < n) {
        int target = next_min;
        int end = pos_of_value[target];  // n_k
        if (end < k) throw std::logic_error("self_similar_rigid: step invariant n_k >= k failed");
        for (int i = start; i <= end; ++i) {
            passed[prefix_order.perm[i]] = true;
            res.r[prefix_order.perm[i]] = k;
        }
        res.plateau_ends.push_back(end);
        while (next_min < n && passed[next_min]) ++next_min;
        start = end + 1;
        ++k;
    }
    res.image_size = k;
    res.complete = true;
    return res;
}

// Definitional validation of a self-similarity witness: rigid with respect
// to the prefix order and non-expansive from Omega_n into Omega_{image}.
inline void validate_self_similar(const LinearOrder& prefix_order, const SelfSimilarResult& res) {
    const int n = prefix_order.size();
    auto rigid = detail::check_rigid(res.r, prefix_order, LinearOrder::identity(res.image_size));
    if (!rigid.ok) throw std::logic_error("self_similar_rigid: rigid check failed: " + rigid.reason);
    if (n >= 1) {
        MetricSpace dom = build_omega_truncation(n);
        MetricSpace cod = build_omega_truncation(res.image_size);
        auto ne = check(res.r, OrderedStructure(Structure(dom)), OrderedStructure(Structure(cod)),
                        MorphismKind::nonexpansive_surjection);
        if (!ne.ok) throw std::logic_error("self_similar_rigid: non-expansive check failed: " + ne.reason);
    }
}

}  // namespace ramseyforge
