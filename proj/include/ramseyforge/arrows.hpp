#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ramseyforge/combinatorics.hpp"
#include "ramseyforge/morphisms.hpp"
#include "ramseyforge/parallel.hpp"

namespace ramseyforge {

// ---- restricted-growth colorings -----------------------------------------
//
// Colorings that differ only by a permutation of the color set color the
// same composition sets with images of the same size, so the exhaustive
// scan walks only canonical representatives: strings whose colors appear
// in first-occurrence order (restricted-growth strings over < k colors).
// A restricted-growth string is the lexicographically least member of its
// orbit, so the lex-least failing canonical coloring is also the lex-least
// failing coloring overall.
class RgsSpace {
public:
    static constexpr std::uint64_t kCountCap = std::uint64_t{1} << 62;

    RgsSpace(int length, int k) : length_(length), k_(k) {
        if (length < 0 || k < 1) throw std::invalid_argument("RgsSpace: bad parameters");
        counts_.assign(length + 1, std::vector<std::uint64_t>(std::min(length, k_) + 2, 0));
        for (std::uint64_t& c : counts_[length]) c = 1;
        for (int pos = length - 1; pos >= 0; --pos)
            for (int used = 0; used <= std::min(pos, std::min(length, k_)); ++used) {
                std::uint64_t c = sat_mul(used, at(pos + 1, used));
                if (used < k_) c = sat_add(c, at(pos + 1, used + 1));
                counts_[pos][used] = c;
            }
    }

    std::uint64_t total() const { return length_ == 0 ? 1 : at(0, 0); }

    // The rank-th canonical coloring in lexicographic order.
    std::vector<int> unrank(std::uint64_t rank) const {
        std::vector<int> digits(length_);
        int used = 0;
        for (int pos = 0; pos < length_; ++pos) {
            int dmax = std::min(used, k_ - 1);
            int chosen = -1;
            for (int d = 0; d <= dmax; ++d) {
                int next_used = used + (d == used ? 1 : 0);
                std::uint64_t block = at(pos + 1, next_used);
                if (rank < block) {
                    chosen = d;
                    used = next_used;
                    break;
                }
                rank -= block;
            }
            if (chosen < 0) throw std::out_of_range("RgsSpace::unrank: rank too large");
            digits[pos] = chosen;
        }
        return digits;
    }

    // Advance to the lexicographic successor; false when exhausted.
    bool next(std::vector<int>& digits) const {
        std::vector<int> used(length_ + 1, 0);
        std::vector<bool> seen(std::min(length_, k_) + 1, false);
        int distinct = 0;
        for (int pos = 0; pos < length_; ++pos) {
            used[pos] = distinct;
            if (!seen[digits[pos]]) {
                seen[digits[pos]] = true;
                ++distinct;
            }
        }
        for (int pos = length_ - 1; pos >= 1; --pos) {
            int cap = std::min(used[pos], k_ - 1);
            if (digits[pos] < cap) {
                ++digits[pos];
                std::fill(digits.begin() + pos + 1, digits.end(), 0);
                return true;
            }
        }
        return false;
    }

private:
    std::uint64_t at(int pos, int used) const {
        if (used >= static_cast<int>(counts_[pos].size())) return 0;
        return counts_[pos][used];
    }
    static std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
        std::uint64_t r;
        if (a != 0 && __builtin_mul_overflow(a, b, &r)) return kCountCap;
        if (a == 0) return 0;
        return std::min(r, kCountCap);
    }
    static std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
        std::uint64_t r;
        if (__builtin_add_overflow(a, b, &r)) return kCountCap;
        return std::min(r, kCountCap);
    }

    int length_;
    int k_;
    std::vector<std::vector<std::uint64_t>> counts_;
};

// ---- hom-sets and instances -----------------------------------------------

// An enumerated hom-set in the canonical (lexicographic) order, with an
// index for composition lookups. The order is part of the on-disk format
// contract: colorings and certificates refer to positions in it.
struct HomSet {
    std::vector<Morphism> items;
    std::map<std::vector<int>, int> index;

    static HomSet build(const OrderedStructure& X, const OrderedStructure& Y, MorphismKind kind,
                        const EnumBudget& budget) {
        HomSet h;
        h.items = enumerate_morphisms(X, Y, kind, budget);
        for (int i = 0; i < static_cast<int>(h.items.size()); ++i) h.index[h.items[i].map] = i;
        return h;
    }

    int size() const { return static_cast<int>(items.size()); }

    int index_of(const std::vector<int>& map) const {
        auto it = index.find(map);
        return it == index.end() ? -1 : it->second;
    }
};

// Statement C -->^d (B)^A_{k,t}: every k-coloring of hom(C,A) admits a
// w in hom(C,B) whose composition set {g.w : g in hom(B,A)} gets at most
// t colors.
struct DualArrowInstance {
    OrderedStructure A;
    OrderedStructure B;
    OrderedStructure C;
    MorphismKind kind = MorphismKind::rigid_surjection;
    int k = 2;
    int t = 1;
};

struct SearchBudget {
    std::uint64_t max_colorings = std::uint64_t{1} << 31;
    EnumBudget morphisms;
};

struct ArrowSearchOptions {
    int workers = 1;
    bool sampling = false;
    std::uint64_t samples = 1 << 16;
    std::uint64_t seed = 0;
    SearchBudget budget;
    bool record_witness_table = false;
    std::uint64_t witness_table_cap = 4096;
};

enum class ArrowStatus { holds, fails, unknown };

inline const char* arrow_status_name(ArrowStatus s) {
    switch (s) {
        case ArrowStatus::holds: return "holds";
        case ArrowStatus::fails: return "fails";
        case ArrowStatus::unknown: return "unknown";
    }
    return "?";
}

struct ArrowVerdict {
    ArrowStatus status = ArrowStatus::unknown;
    // Failing certificate: the lexicographically least bad coloring of
    // hom(C,A) and, per w in hom(C,B) order, the size of its color image.
    std::vector<int> bad_coloring;
    std::vector<int> per_w_counts;
    // Witness for a holding verdict: canonical coloring -> least good w.
    std::vector<std::pair<std::vector<int>, int>> witness_table;
    bool witness_table_truncated = false;
    std::uint64_t canonical_colorings = 0;
    int hom_ca_size = 0;
    int hom_cb_size = 0;
    int hom_ba_size = 0;
};

struct ArrowContext {
    HomSet hom_ca, hom_cb, hom_ba;
    // comp[w][g] = position of (g . w) in hom_ca.
    std::vector<std::vector<int>> comp;
};

inline ArrowContext build_arrow_context(const DualArrowInstance& inst, const EnumBudget& budget) {
    ArrowContext ctx;
    ctx.hom_ca = HomSet::build(inst.C, inst.A, inst.kind, budget);
    ctx.hom_cb = HomSet::build(inst.C, inst.B, inst.kind, budget);
    ctx.hom_ba = HomSet::build(inst.B, inst.A, inst.kind, budget);
    ctx.comp.resize(ctx.hom_cb.size());
    for (int w = 0; w < ctx.hom_cb.size(); ++w) {
        ctx.comp[w].resize(ctx.hom_ba.size());
        for (int g = 0; g < ctx.hom_ba.size(); ++g) {
            Morphism c = compose(ctx.hom_ba.items[g], ctx.hom_cb.items[w]);
            int idx = ctx.hom_ca.index_of(c.map);
            if (idx < 0)
                throw std::logic_error("composition fell outside the enumerated hom-set; "
                                       "the morphism class is not composition-closed here");
            ctx.comp[w][g] = idx;
        }
    }
    return ctx;
}

namespace detail {

// Distinct colors of {coloring[comp[w][g]] : g}, early-out above `cap`.
inline int image_color_count(const std::vector<int>& comp_w, const std::vector<int>& coloring,
                             int cap, std::vector<int>& scratch, int& epoch) {
    ++epoch;
    int distinct = 0;
    for (int idx : comp_w) {
        int c = coloring[idx];
        if (scratch[c] != epoch) {
            scratch[c] = epoch;
            if (++distinct > cap) return distinct;
        }
    }
    return distinct;
}

}  // namespace detail

// Independent re-scoring of a coloring: recomputes every composition
// pointwise and counts colors by linear lookup, bypassing the precomputed
// composition table. Used to re-verify certificates before they are
// emitted.
inline std::vector<int> rescore_coloring(const ArrowContext& ctx, const std::vector<int>& coloring) {
    std::vector<int> counts;
    counts.reserve(ctx.hom_cb.size());
    for (const Morphism& w : ctx.hom_cb.items) {
        std::vector<int> seen;
        for (const Morphism& g : ctx.hom_ba.items) {
            std::vector<int> comp(w.map.size());
            for (size_t i = 0; i < w.map.size(); ++i) comp[i] = g.map[w.map[i]];
            int idx = -1;
            for (int j = 0; j < ctx.hom_ca.size(); ++j)
                if (ctx.hom_ca.items[j].map == comp) {
                    idx = j;
                    break;
                }
            if (idx < 0) throw std::logic_error("rescore: composition not in hom-set");
            int c = coloring[idx];
            if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
        }
        counts.push_back(static_cast<int>(seen.size()));
    }
    return counts;
}

// Exhaustive (or sampling) decision of a dual arrow instance.
inline ArrowVerdict dual_arrow_check(const DualArrowInstance& inst, const ArrowSearchOptions& opt = {}) {
    if (inst.k < 1 || inst.t < 1) throw std::invalid_argument("dual_arrow_check: need k >= 1, t >= 1");
    ArrowContext ctx = build_arrow_context(inst, opt.budget.morphisms);
    ArrowVerdict v;
    v.hom_ca_size = ctx.hom_ca.size();
    v.hom_cb_size = ctx.hom_cb.size();
    v.hom_ba_size = ctx.hom_ba.size();

    const int n = ctx.hom_ca.size();
    const int k = inst.k;

    if (ctx.hom_cb.size() == 0) {
        // No candidate w at all: every coloring is bad.
        v.status = ArrowStatus::fails;
        v.bad_coloring.assign(n, 0);
        v.canonical_colorings = 0;
        return v;
    }

    if (opt.sampling) {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<int> color(0, k - 1);
        std::vector<int> scratch(k, 0);
        int epoch = 0;
        for (std::uint64_t s = 0; s < opt.samples; ++s) {
            std::vector<int> coloring(n);
            for (int& c : coloring) c = color(rng);
            bool good = false;
            for (const auto& comp_w : ctx.comp)
                if (detail::image_color_count(comp_w, coloring, inst.t, scratch, epoch) <= inst.t) {
                    good = true;
                    break;
                }
            if (!good) {
                v.status = ArrowStatus::fails;
                v.bad_coloring = coloring;
                v.per_w_counts = rescore_coloring(ctx, coloring);
                for (int c : v.per_w_counts)
                    if (c <= inst.t) throw std::logic_error("certificate failed re-verification");
                return v;
            }
        }
        v.status = ArrowStatus::unknown;
        return v;
    }

    RgsSpace space(n, k);
    const std::uint64_t total = space.total();
    v.canonical_colorings = total;
    if (total > opt.budget.max_colorings)
        throw BudgetError("coloring space exceeds budget (" + std::to_string(total) +
                              " canonical colorings); use sampling mode",
                          "max_colorings");

    const bool want_table = opt.record_witness_table && total <= opt.witness_table_cap;
    v.witness_table_truncated = opt.record_witness_table && !want_table;

    // Cooperative scan for the least-rank failing coloring. Workers own
    // contiguous rank ranges; a worker stops as soon as a strictly lower
    // range has already failed, so the reported certificate is the
    // lexicographically least failing coloring for every worker count.
    std::atomic<std::uint64_t> best_fail{UINT64_MAX};
    int workers = std::max(1, opt.workers);
    std::vector<std::vector<std::pair<std::vector<int>, int>>> tables(workers);

    run_sharded(total, workers, [&](int worker, std::uint64_t lo, std::uint64_t hi) {
        std::vector<int> coloring = space.unrank(lo);
        std::vector<int> scratch(k, 0);
        int epoch = 0;
        std::vector<int> mtf(ctx.comp.size());
        for (size_t i = 0; i < mtf.size(); ++i) mtf[i] = static_cast<int>(i);
        for (std::uint64_t rank = lo; rank < hi; ++rank, space.next(coloring)) {
            if ((rank & 0xff) == 0 && best_fail.load(std::memory_order_relaxed) < lo) return;
            int good_w = -1;
            if (want_table) {
                for (size_t wi = 0; wi < ctx.comp.size(); ++wi)
                    if (detail::image_color_count(ctx.comp[wi], coloring, inst.t, scratch, epoch) <=
                        inst.t) {
                        good_w = static_cast<int>(wi);
                        break;
                    }
            } else {
                // Move-to-front: a w that worked recently is likely to work again.
                for (size_t mi = 0; mi < mtf.size(); ++mi) {
                    int wi = mtf[mi];
                    if (detail::image_color_count(ctx.comp[wi], coloring, inst.t, scratch, epoch) <=
                        inst.t) {
                        good_w = wi;
                        mtf.erase(mtf.begin() + mi);
                        mtf.insert(mtf.begin(), wi);
                        break;
                    }
                }
            }
            if (good_w < 0) {
                std::uint64_t prev = best_fail.load();
                while (rank < prev && !best_fail.compare_exchange_weak(prev, rank)) {
                }
                return;
            }
            if (want_table) tables[worker].emplace_back(coloring, good_w);
        }
    });

    std::uint64_t fail_rank = best_fail.load();
    if (fail_rank == UINT64_MAX) {
        v.status = ArrowStatus::holds;
        if (want_table)
            for (auto& t : tables)
                for (auto& row : t) v.witness_table.push_back(std::move(row));
        return v;
    }

    v.status = ArrowStatus::fails;
    v.bad_coloring = space.unrank(fail_rank);
    v.per_w_counts = rescore_coloring(ctx, v.bad_coloring);
    for (int c : v.per_w_counts)
        if (c <= inst.t) throw std::logic_error("certificate failed re-verification");
    return v;
}

// ---- minimal tolerance -----------------------------------------------------

struct MinTResult {
    int min_t = 0;  // least t for which the arrow holds
    int t_upper_bound = 0;  // min(k, |hom(B,A)|)
    // For each t in 1..min_t-1: the lexicographically least coloring whose
    // best w still shows more than t colors.
    std::vector<std::pair<int, std::vector<int>>> failing_certificates;
    std::uint64_t canonical_colorings = 0;
    int hom_ca_size = 0;
    int hom_cb_size = 0;
    int hom_ba_size = 0;
};

// Single sweep over the canonical colorings computing
// max over colorings of (min over w of image size); the arrow holds at t
// exactly when t is at least that value.
inline MinTResult min_t(const DualArrowInstance& inst, const ArrowSearchOptions& opt = {}) {
    ArrowContext ctx = build_arrow_context(inst, opt.budget.morphisms);
    MinTResult r;
    r.hom_ca_size = ctx.hom_ca.size();
    r.hom_cb_size = ctx.hom_cb.size();
    r.hom_ba_size = ctx.hom_ba.size();
    if (ctx.hom_cb.size() == 0)
        throw std::invalid_argument("min_t: hom(C,B) is empty, no arrow can hold");
    r.t_upper_bound = std::min(inst.k, ctx.hom_ba.size());

    const int n = ctx.hom_ca.size();
    const int k = inst.k;
    RgsSpace space(n, k);
    const std::uint64_t total = space.total();
    r.canonical_colorings = total;
    if (total > opt.budget.max_colorings)
        throw BudgetError("coloring space exceeds budget (" + std::to_string(total) +
                              " canonical colorings)",
                          "max_colorings");

    const int tmax = r.t_upper_bound;
    int workers = std::max(1, opt.workers);
    std::vector<int> local_max(workers, 0);
    // first_above[w][t] = least rank in worker w's range with min-image > t
    std::vector<std::vector<std::uint64_t>> first_above(
        workers, std::vector<std::uint64_t>(tmax + 1, UINT64_MAX));

    run_sharded(total, workers, [&](int worker, std::uint64_t lo, std::uint64_t hi) {
        std::vector<int> coloring = space.unrank(lo);
        std::vector<int> scratch(k, 0);
        int epoch = 0;
        for (std::uint64_t rank = lo; rank < hi; ++rank, space.next(coloring)) {
            int best = INT32_MAX;
            for (const auto& comp_w : ctx.comp) {
                int c = detail::image_color_count(comp_w, coloring, best - 1, scratch, epoch);
                if (c < best) best = c;
                if (best == 1) break;
            }
            local_max[worker] = std::max(local_max[worker], best);
            for (int t = 1; t <= tmax && t < best; ++t)
                if (first_above[worker][t] == UINT64_MAX) first_above[worker][t] = rank;
        }
    });

    int global_max = 1;
    for (int m : local_max) global_max = std::max(global_max, m);
    r.min_t = global_max;
    for (int t = 1; t < global_max; ++t) {
        std::uint64_t rank = UINT64_MAX;
        for (int w = 0; w < workers; ++w) rank = std::min(rank, first_above[w][t]);
        if (rank != UINT64_MAX) r.failing_certificates.emplace_back(t, space.unrank(rank));
    }
    return r;
}

// ---- colorings --------------------------------------------------------------

enum class ColoringProvenance { explicit_coloring, canonical_order, adversarial };

inline const char* provenance_name(ColoringProvenance p) {
    switch (p) {
        case ColoringProvenance::explicit_coloring: return "explicit";
        case ColoringProvenance::canonical_order: return "canonical_order";
        case ColoringProvenance::adversarial: return "adversarial";
    }
    return "?";
}

struct Coloring {
    std::string target;  // description of the enumerated morphism set
    std::vector<int> colors;
    ColoringProvenance provenance = ColoringProvenance::explicit_coloring;
};

// chi(f) = lexicographic index, among all |A|! orders of A, of the unique
// codomain order making f rigid with respect to the fixed order on C.
inline Coloring canonical_order_coloring(const OrderedStructure& C, const LinearOrder& order_c,
                                         const OrderedStructure& A, MorphismKind kind,
                                         const EnumBudget& budget = {}) {
    auto homset = enumerate_morphisms(C, A, kind, budget);
    Coloring col;
    col.target = std::string("hom(C[") + std::to_string(C.size()) + "],A[" +
                 std::to_string(A.size()) + "]," + kind_name(kind) + ")";
    col.provenance = ColoringProvenance::canonical_order;
    col.colors.reserve(homset.size());
    for (const Morphism& f : homset) {
        LinearOrder induced = induced_dual_restriction(f.map, A.size(), order_c);
        col.colors.push_back(static_cast<int>(permutation_lex_rank(induced.perm)));
    }
    return col;
}

// min over w in hom(C,B) of |{chi(g . w) : g in hom(B,A)}| -- a lower bound
// on any tolerance t for which the arrow holds under this coloring.
inline int coloring_floor(const OrderedStructure& C, const OrderedStructure& B,
                          const OrderedStructure& A, const Coloring& chi, MorphismKind kind,
                          const EnumBudget& budget = {}) {
    DualArrowInstance inst{A, B, C, kind, 1, 1};
    ArrowContext ctx = build_arrow_context(inst, budget);
    if (ctx.hom_cb.size() == 0) throw std::invalid_argument("coloring_floor: hom(C,B) is empty");
    if (chi.colors.size() != static_cast<size_t>(ctx.hom_ca.size()))
        throw std::invalid_argument("coloring_floor: coloring length != |hom(C,A)|");
    int best = INT32_MAX;
    for (const auto& comp_w : ctx.comp) {
        std::vector<int> seen;
        for (int idx : comp_w) {
            int c = chi.colors[idx];
            if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
        }
        best = std::min(best, static_cast<int>(seen.size()));
    }
    return best;
}

// ---- upward witness search (Finite Dual Ramsey smoke check) ----------------

struct ChainArrowSearchResult {
    int found_size = -1;  // least chain size |C| at which the arrow holds
    std::vector<std::pair<int, bool>> per_size;
};

// Searches chain sizes |C| = max(|A|,|B|), ..., cap for the least C with
// C -->^d (B)^A_{k,t} over rigid surjections. Termination below the cap is
// guaranteed by the Finite Dual Ramsey Theorem; the cap itself is an
// engineering constant.
inline ChainArrowSearchResult search_chain_arrow_size(int a_size, int b_size, int k, int t,
                                                      int size_cap,
                                                      const ArrowSearchOptions& opt = {}) {
    ChainArrowSearchResult res;
    for (int c = std::max(a_size, b_size); c <= size_cap; ++c) {
        DualArrowInstance inst{OrderedStructure(Chain(a_size)), OrderedStructure(Chain(b_size)),
                               OrderedStructure(Chain(c)), MorphismKind::rigid_surjection, k, t};
        ArrowVerdict v = dual_arrow_check(inst, opt);
        bool holds = v.status == ArrowStatus::holds;
        res.per_size.emplace_back(c, holds);
        if (holds) {
            res.found_size = c;
            return res;
        }
    }
    return res;
}

}  // namespace ramseyforge
