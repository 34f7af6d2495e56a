#include <catch2/catch.hpp>

#include <random>

#include "oracles.hpp"
#include "ramseyforge/expansions.hpp"

using namespace ramseyforge;

TEST_CASE("linear order fibers: count and order") {
    auto f2 = linear_order_fibers(2);
    REQUIRE(f2.size() == 2);
    CHECK(f2[0].perm == std::vector<int>{0, 1});
    CHECK(f2[1].perm == std::vector<int>{1, 0});
    for (int n = 1; n <= 5; ++n) CHECK(linear_order_fibers(n).size() == oracles::factorial(n));
}

TEST_CASE("tidy edge order fibers: A_2 has p!*m! = 2") {
    auto fibers = tidy_edge_order_fibers(build_copies_of_a2(1));
    REQUIRE(fibers.size() == 2);
    CHECK(fibers[0].edges == std::vector<Edge>{{0, 0}, {1, 1}, {0, 1}});
    CHECK(fibers[1].edges == std::vector<Edge>{{1, 1}, {0, 0}, {0, 1}});
    for (const auto& f : fibers) CHECK(f.is_tidy(build_copies_of_a2(1)));
}

TEST_CASE("tidy edge order fibers count p!*m! for every digraph on <= 3 vertices") {
    for (int n = 1; n <= 3; ++n) {
        int pairs = n * (n - 1);
        for (int mask = 0; mask < (1 << pairs); ++mask) {
            ReflexiveDigraph d(n);
            int bit = 0;
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    if (x == y) continue;
                    if (mask & (1 << bit)) d.add_edge(x, y);
                    ++bit;
                }
            auto fibers = tidy_edge_order_fibers(d);
            std::uint64_t expect =
                oracles::factorial(n) * oracles::factorial(d.non_loop_count());
            REQUIRE(fibers.size() == expect);
            std::set<EdgeOrder> distinct(fibers.begin(), fibers.end());
            CHECK(distinct.size() == fibers.size());
            for (const auto& f : fibers) CHECK(f.is_tidy(d));
        }
    }
}

TEST_CASE("tidy edge order fibers on sparse 4-vertex digraphs") {
    // dense 4-vertex digraphs have up to 4!*12! tidy orders, far past desk
    // scale; the sparse ones stay checkable
    auto two_a2 = build_copies_of_a2(2);
    CHECK(tidy_edge_order_fibers(two_a2).size() == oracles::factorial(4) * oracles::factorial(2));
    ReflexiveDigraph path(4);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    path.add_edge(2, 3);
    CHECK(tidy_edge_order_fibers(path).size() == oracles::factorial(4) * oracles::factorial(3));
    CHECK(tidy_edge_order_fibers(ReflexiveDigraph(4)).size() == oracles::factorial(4));
}

TEST_CASE("dual restriction uniqueness: exhaustive over every surjection up to 4 -> 4") {
    for (int dom = 1; dom <= 4; ++dom)
        for (int cod = 1; cod <= dom; ++cod) {
            auto surjections = oracles::all_maps_where(dom, cod, [&](const std::vector<int>& f) {
                return oracles::surjective(f, cod);
            });
            for (const auto& f : surjections)
                for (const auto& dom_perm : all_permutations(dom)) {
                    int rigid_targets = 0;
                    for (const auto& cod_perm : all_permutations(cod))
                        if (oracles::rigid_surjection_ordered(f, dom_perm, cod_perm)) ++rigid_targets;
                    CHECK(rigid_targets == 1);
                }
        }
}

TEST_CASE("acyclic orientation fibers of K_3") {
    auto k3 = symmetrize(build_rotational_tournament(3));
    auto fibers = acyclic_orientation_fibers(k3);
    CHECK(fibers.size() == 6);
    CHECK(fibers.size() == oracles::acyclic_orientations(k3));
    for (const auto& d : fibers) {
        CHECK(classify(d).is_acyclic);
        CHECK(classify(d).is_oriented);
    }
    CHECK_THROWS_AS(acyclic_orientation_fibers(build_copies_of_a2(1)), std::invalid_argument);
}

TEST_CASE("dual reasonable witness: vertex orders") {
    // f = [0,0,1], target 0<1: blocks {0,1} then {2}
    auto w1 = dual_reasonable_vertex_witness({0, 0, 1}, 3, LinearOrder::identity(2));
    CHECK(w1.perm == std::vector<int>{0, 1, 2});
    CHECK(detail::check_rigid({0, 0, 1}, w1, LinearOrder::identity(2)).ok);
    // f = [1,0,0], target 0<1: block of f->0 is {1,2}, then {0}
    auto w2 = dual_reasonable_vertex_witness({1, 0, 0}, 3, LinearOrder::identity(2));
    CHECK(w2.perm == std::vector<int>{1, 2, 0});
    CHECK(detail::check_rigid({1, 0, 0}, w2, LinearOrder::identity(2)).ok);
    // identity pulls the target order back unchanged
    LinearOrder target({1, 0});
    auto w3 = dual_reasonable_vertex_witness({0, 1}, 2, target);
    CHECK(w3.perm == target.perm);
}

TEST_CASE("dual reasonable witness passes the rigid check on random surjections") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        int cod = 1 + static_cast<int>(rng() % 5);
        int dom = cod + static_cast<int>(rng() % (7 - cod));
        std::vector<int> f(dom);
        for (int i = 0; i < cod; ++i) f[i] = i;
        for (int i = cod; i < dom; ++i) f[i] = static_cast<int>(rng() % cod);
        std::shuffle(f.begin(), f.end(), rng);
        for (const auto& target_perm : all_permutations(cod)) {
            LinearOrder target(target_perm);
            auto witness = dual_reasonable_vertex_witness(f, dom, target);
            CHECK(oracles::rigid_surjection_ordered(f, witness.perm, target.perm));
        }
    }
}

TEST_CASE("dual reasonable witness: tidy edge orders") {
    auto a3 = build_acyclic_tournament(3);
    auto a2 = build_acyclic_tournament(2);
    std::vector<int> f{0, 0, 1};
    REQUIRE(oracles::digraph_quotient(f, a3, a2));
    for (const auto& target : tidy_edge_order_fibers(a2)) {
        EdgeOrder witness = dual_reasonable_edge_witness(f, a3, a2, target);
        CHECK(witness.is_tidy(a3));
        CHECK(detail::check_edge_rigid(f, witness, target, true).ok);
    }
}

TEST_CASE("bound reports") {
    auto rm = bound_report_metric(build_equilateral(3, Rational(1)));
    REQUIRE(rm.entries.size() == 1);
    CHECK(rm.entries[0].thm == "3.2");
    CHECK(rm.entries[0].relation == "=");
    CHECK(rm.entries[0].bound == 6);
    CHECK_FALSE(rm.entries[0].symbolic_only);
    // the metric bound equals the fiber count exactly
    CHECK(rm.entries[0].bound == linear_order_fibers(3).size());

    auto rd = bound_report_digraph(build_copies_of_a2(1));
    REQUIRE(rd.entries.size() == 2);
    CHECK(rd.entries[0].thm == "4.2");
    CHECK(rd.entries[0].bound == 2);  // p!*m! = 2!*1!
    CHECK_FALSE(rd.entries[0].symbolic_only);
    CHECK(rd.entries[1].thm == "4.6");
    CHECK(rd.entries[1].bound == 8);  // 2!*1!*2^(2-0)
    CHECK(rd.entries[1].symbolic_only);

    auto k3 = symmetrize(build_rotational_tournament(3));
    auto rg = bound_report_graph(k3);
    REQUIRE(rg.entries.size() == 2);
    CHECK(rg.entries[0].thm == "4.3");
    CHECK(rg.entries[0].bound == oracles::factorial(3) * oracles::factorial(6));
    CHECK(rg.entries[1].thm == "4.7");
    // n!*m!*2^(n-p)*a(G) = 6*720*8*6
    CHECK(rg.entries[1].bound == 6ull * 720 * 8 * 6);
    CHECK(rg.entries[1].symbolic_only);
}

TEST_CASE("tidy fibers match the 4.2 bound ingredient for digraph-like classes") {
    auto d = build_acyclic_tournament(3);
    auto rep = bound_report_digraph(d);
    CHECK(rep.entries[0].bound == tidy_edge_order_fibers(d).size());
}

TEST_CASE("expansion axioms at instance level: vertex orders") {
    // all 6 surjections E_{3,1} -> E_{2,1}, both target orders
    auto sample = oracles::all_maps_where(3, 2, [&](const std::vector<int>& f) {
        return oracles::surjective(f, 2);
    });
    REQUIRE(sample.size() == 6);
    auto rep = check_axioms_instance_vertex(3, 2, sample);
    CHECK(rep.reasonableness_checks == 12);
    CHECK(rep.uniqueness_checks == 36);
    CHECK(rep.clean());
    // identity morphisms trivially pass
    auto rep_id = check_axioms_instance_vertex(2, 2, {{0, 1}});
    CHECK(rep_id.clean());
}

TEST_CASE("expansion axioms at instance level: tidy edge orders") {
    auto a3 = build_acyclic_tournament(3);
    auto a2 = build_acyclic_tournament(2);
    auto quotients = oracles::all_maps_where(3, 2, [&](const std::vector<int>& f) {
        return oracles::digraph_quotient(f, a3, a2);
    });
    REQUIRE(quotients.size() == 2);
    auto rep = check_axioms_instance_edge(a3, a2, quotients);
    CHECK(rep.clean());
    CHECK(rep.reasonableness_checks > 0);
    CHECK(rep.uniqueness_checks > 0);
}

TEST_CASE("amalgamation symmetrization") {
    // apex K_2-as-digraph-with-both-arrows, identity onto K_2: already a graph
    auto k2 = symmetrize(build_copies_of_a2(1));
    AmalgamationCone cone1{k2, {k2}, {{0, 1}}, {}};
    auto sol1 = amalgamation_symmetrize(cone1);
    CHECK(sol1.apex == k2);
    CHECK(sol1.revalidated == 1);

    // apex T_3 (genuinely asymmetric), f = [0,0,1] onto K_2: the cycle
    // reflects both directions; symmetrize(T_3) = K_3 keeps the same map
    auto t3 = build_rotational_tournament(3);
    REQUIRE(oracles::digraph_quotient({0, 0, 1}, t3, k2));
    AmalgamationCone cone2{t3, {k2}, {{0, 0, 1}}, {}};
    auto sol2 = amalgamation_symmetrize(cone2);
    CHECK(sol2.apex == symmetrize(t3));
    CHECK(sol2.revalidated == 1);

    // an acyclic apex cannot reflect the symmetric codomain edge (1,0):
    // rejected at the precondition, not silently symmetrized
    auto a3 = build_acyclic_tournament(3);
    CHECK_FALSE(oracles::digraph_quotient({0, 0, 1}, a3, k2));
    AmalgamationCone acyclic_cone{a3, {k2}, {{0, 0, 1}}, {}};
    CHECK_THROWS_AS(amalgamation_symmetrize(acyclic_cone), std::invalid_argument);

    // empty morphism set: symmetrize only
    AmalgamationCone cone3{a3, {}, {}, {}};
    auto sol3 = amalgamation_symmetrize(cone3);
    CHECK(sol3.apex == symmetrize(a3));

    // diagram commutativity is validated
    AmalgamationCone bad{t3, {k2, k2}, {{0, 0, 1}, {0, 0, 1}}, {{0, 1, {1, 0}}}};
    CHECK_THROWS_AS(amalgamation_symmetrize(bad), std::invalid_argument);
    AmalgamationCone good{t3, {k2, k2}, {{0, 0, 1}, {0, 0, 1}}, {{0, 1, {0, 1}}}};
    auto sol4 = amalgamation_symmetrize(good);
    CHECK(sol4.revalidated == 2);

    // a non-graph target is a parameter error
    AmalgamationCone nongraph{a3, {build_acyclic_tournament(2)}, {{0, 0, 1}}, {}};
    CHECK_THROWS_AS(amalgamation_symmetrize(nongraph), std::invalid_argument);
}
