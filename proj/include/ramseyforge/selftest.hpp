#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ramseyforge/arrows.hpp"
#include "ramseyforge/expansions.hpp"
#include "ramseyforge/metric_lab.hpp"
#include "ramseyforge/preadjunction.hpp"
#include "ramseyforge/tournaments.hpp"

namespace ramseyforge {

struct SelfTestResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Compact exhaustive micro-suites of every module, runnable from the CLI.
// The heavyweight oracle-backed versions live in the test suite; these are
// the coherence sweeps a user can replay anywhere.
inline std::vector<SelfTestResult> run_selftests(int workers = 1) {
    std::vector<SelfTestResult> out;
    auto run = [&](const std::string& name, const std::function<std::string()>& body) {
        SelfTestResult r;
        r.name = name;
        try {
            r.detail = body();
            r.passed = true;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = e.what();
        }
        out.push_back(std::move(r));
    };

    run("core-structures: canonical generators classify as expected", [] {
        for (int n = 1; n <= 8; ++n) {
            auto f = classify(build_acyclic_tournament(n));
            if (!f.is_poset || !f.is_tournament) throw std::runtime_error("A_n flags wrong");
        }
        if (classify(build_rotational_tournament(3)).is_acyclic)
            throw std::runtime_error("rotational T_3 must contain a cycle");
        ReflexiveDigraph k2 = symmetrize(build_copies_of_a2(1));
        if (!classify(k2).is_graph) throw std::runtime_error("symmetrize(A_2) must be a graph");
        if (!(symmetrize(k2) == k2)) throw std::runtime_error("symmetrize must be idempotent");
        build_omega_truncation(64);  // construction validates the triangle inequality
        return std::string("acyclic/rotational/symmetrize/omega checks passed");
    });

    run("morphism-engine: enumerate matches a full scan on micro instances", [] {
        struct Micro {
            OrderedStructure x, y;
            MorphismKind kind;
        };
        std::vector<Micro> micros;
        micros.push_back({OrderedStructure(Structure(Chain(4))), OrderedStructure(Structure(Chain(3))),
                          MorphismKind::rigid_surjection});
        micros.push_back({OrderedStructure(Structure(build_acyclic_tournament(3))),
                          OrderedStructure(Structure(build_acyclic_tournament(2))),
                          MorphismKind::quotient});
        micros.push_back({OrderedStructure(Structure(build_equilateral(3, Rational(1)))),
                          OrderedStructure(Structure(build_equilateral(2, Rational(1)))),
                          MorphismKind::nonexpansive_surjection});
        std::uint64_t compared = 0;
        for (const auto& m : micros) {
            auto fast = enumerate_morphisms(m.x, m.y, m.kind);
            std::vector<std::vector<int>> slow;
            std::vector<int> f(m.x.size(), 0);
            const int cod = m.y.size();
            while (true) {
                if (check(f, m.x, m.y, m.kind).ok) slow.push_back(f);
                int i = m.x.size() - 1;
                while (i >= 0 && f[i] == cod - 1) f[i--] = 0;
                if (i < 0) break;
                ++f[i];
            }
            if (fast.size() != slow.size()) throw std::runtime_error("enumerate/scan size mismatch");
            for (size_t i = 0; i < fast.size(); ++i)
                if (fast[i].map != slow[i]) throw std::runtime_error("enumerate/scan order mismatch");
            compared += fast.size();
        }
        return "cross-validated " + std::to_string(compared) + " morphisms";
    });

    run("ramsey-arrows: 4->3->2 chain certificate and monotonicity", [workers] {
        ArrowSearchOptions opt;
        opt.workers = workers;
        DualArrowInstance inst{OrderedStructure(Structure(Chain(2))),
                               OrderedStructure(Structure(Chain(3))),
                               OrderedStructure(Structure(Chain(4))),
                               MorphismKind::rigid_surjection, 2, 1};
        auto v = dual_arrow_check(inst, opt);
        if (v.status != ArrowStatus::fails) throw std::runtime_error("expected a failing arrow");
        if (v.bad_coloring != std::vector<int>{0, 0, 1, 0, 1, 1, 0})
            throw std::runtime_error("unexpected certificate");
        inst.t = 2;
        if (dual_arrow_check(inst, opt).status != ArrowStatus::holds)
            throw std::runtime_error("arrow must hold at t=2");
        return std::string("certificate reproduced; holds at t=2");
    });

    run("expansion-transfer: tidy fibers count p!*m!", [] {
        for (int base_mask = 0; base_mask < 4; ++base_mask) {
            ReflexiveDigraph d(2);
            if (base_mask & 1) d.add_edge(0, 1);
            if (base_mask & 2) d.add_edge(1, 0);
            auto fibers = tidy_edge_order_fibers(d);
            std::uint64_t expect =
                factorial_u64(d.size()) * factorial_u64(d.non_loop_count());
            if (fibers.size() != expect) throw std::runtime_error("fiber count mismatch");
        }
        return std::string("all 2-vertex digraphs verified");
    });

    run("preadjunction: (PA) exhaustive micro sweep", [] {
        auto rep = pa_sweep(3);
        if (!rep.clean() || rep.instances == 0)
            throw std::runtime_error("PA sweep not clean: " + std::to_string(rep.failures) +
                                     " failures over " + std::to_string(rep.instances));
        return std::to_string(rep.instances) + " instances, zero failures";
    });

    run("tournament-lab: T_3 self-sibling and B_1 certificate", [workers] {
        auto sib = sibling_search(3, 3, 3, workers);
        if (!sib.found) throw std::runtime_error("T_3 must be a sibling of itself");
        auto nd = no_degree_certificate(1);
        if (nd.double_match_fired || !nd.phi_colors_match || nd.distinct_colors < 1)
            throw std::runtime_error("B_1 certificate failed");
        return std::string("sibling witness on ") + std::to_string(sib.size) +
               " vertices; B_1 colors ok";
    });

    run("metric-lab: splits, projections, self-similarity", [] {
        auto splits = split_by_threshold(build_omega_truncation(4), Rational(3));
        if (splits.size() != 1 || splits[0] != std::vector<int>{0, 0, 0, 1})
            throw std::runtime_error("omega_4 threshold-3 split wrong");
        auto up = universal_projection(build_equilateral(2, Rational(1)));
        if (up.prefix_len != 3 || !validate_universal_projection(build_equilateral(2, Rational(1)), up).ok)
            throw std::runtime_error("projection of E_{2,1} wrong");
        for (auto& perm : all_permutations(4)) {
            LinearOrder o(perm);
            validate_self_similar(o, self_similar_rigid(o));
        }
        return std::string("splits/projection/self-similarity verified");
    });

    return out;
}

}  // namespace ramseyforge
