#include <catch2/catch.hpp>

#include "ramseyforge/json_io.hpp"
#include "ramseyforge/structures.hpp"

using namespace ramseyforge;

TEST_CASE("rational arithmetic is exact") {
    Rational a(1, 2), b(1, 3);
    CHECK((a + b) == Rational(5, 6));
    CHECK((a - b) == Rational(1, 6));
    CHECK((a * b) == Rational(1, 6));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(6, 3).str() == "2");
    CHECK(Rational(3, 2).str() == "3/2");
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(INT64_MAX) * Rational(INT64_MAX), std::overflow_error);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(1, 3));
}

TEST_CASE("classify: acyclic tournament A_3") {
    auto f = classify(build_acyclic_tournament(3));
    CHECK_FALSE(f.is_graph);
    CHECK(f.is_oriented);
    CHECK(f.is_acyclic);
    CHECK(f.is_transitive);
    CHECK(f.is_poset);
    CHECK(f.is_tournament);
}

TEST_CASE("classify: rotational T_3 has a cycle but is a tournament") {
    auto f = classify(build_rotational_tournament(3));
    CHECK_FALSE(f.is_acyclic);
    CHECK(f.is_tournament);
}

TEST_CASE("classify: symmetrization is a graph, not oriented") {
    auto f = classify(symmetrize(build_copies_of_a2(1)));
    CHECK(f.is_graph);
    CHECK_FALSE(f.is_oriented);
}

TEST_CASE("classify: A_n is a poset for all n <= 8") {
    for (int n = 1; n <= 8; ++n) CHECK(classify(build_acyclic_tournament(n)).is_poset);
}

TEST_CASE("rotational tournament on 3 vertices is the 3-cycle") {
    auto t = build_rotational_tournament(3);
    CHECK(t.edge(0, 1));
    CHECK(t.edge(1, 2));
    CHECK(t.edge(2, 0));
    CHECK_FALSE(t.edge(1, 0));
    CHECK_FALSE(t.edge(2, 1));
    CHECK_FALSE(t.edge(0, 2));
    CHECK_THROWS_AS(build_rotational_tournament(4), std::invalid_argument);
    CHECK_THROWS_AS(build_rotational_tournament(1), std::invalid_argument);
}

TEST_CASE("omega truncation distances are max(x, y)") {
    auto m = build_omega_truncation(3);
    CHECK(m.at(0, 1) == Rational(1));
    CHECK(m.at(0, 2) == Rational(2));
    CHECK(m.at(1, 2) == Rational(2));
    // the max metric satisfies the triangle inequality at every desk size
    build_omega_truncation(64);
}

TEST_CASE("copies of A_2") {
    auto d = build_copies_of_a2(2);
    CHECK(d.size() == 4);
    CHECK(d.non_loops() == std::vector<Edge>{{0, 1}, {2, 3}});
}

TEST_CASE("arrow sum: basic shapes") {
    ReflexiveDigraph one(1);
    CHECK(arrow_sum(one, one) == build_copies_of_a2(1));  // A_2
    auto d = arrow_sum(one, build_rotational_tournament(3));
    CHECK(d.size() == 4);
    for (int v = 1; v < 4; ++v) CHECK(d.edge(0, v));
    CHECK(classify(d).is_tournament);
    // A_2 => A_1 is A_3
    CHECK(arrow_sum(build_acyclic_tournament(2), one) == build_acyclic_tournament(3));
    // block labeling makes => literally associative
    auto t3 = build_rotational_tournament(3);
    auto a2 = build_acyclic_tournament(2);
    CHECK(arrow_sum(arrow_sum(t3, a2), one) == arrow_sum(t3, arrow_sum(a2, one)));
}

TEST_CASE("arrow sum: cross edges and tournament flag") {
    auto s = build_rotational_tournament(3);
    auto t = build_acyclic_tournament(2);
    auto d = arrow_sum(s, t);
    int cross = 0;
    for (int x = 0; x < 3; ++x)
        for (int y = 3; y < 5; ++y)
            if (d.edge(x, y)) ++cross;
    CHECK(cross == 3 * 2);
    CHECK(classify(d).is_tournament);
    auto not_tournament = arrow_sum(symmetrize(s), t);
    CHECK_FALSE(classify(not_tournament).is_tournament);
}

TEST_CASE("induced substructures relabel in order") {
    CHECK(induced_subdigraph(build_acyclic_tournament(3), {0, 2}) == build_acyclic_tournament(2));
    auto sub = induced_submetric(build_omega_truncation(3), {1, 2});
    CHECK(sub.size() == 2);
    CHECK(sub.at(0, 1) == Rational(2));
    CHECK_THROWS_AS(induced_subdigraph(build_acyclic_tournament(3), {}), std::invalid_argument);
    // restriction to every vertex is the identity relabeling
    auto t5 = build_rotational_tournament(5);
    CHECK(induced_subdigraph(t5, {0, 1, 2, 3, 4}) == t5);
    // independent index-by-index restriction oracle
    std::vector<int> keep{0, 1, 2};
    auto t5_sub = induced_subdigraph(t5, keep);
    CHECK(classify(t5_sub).is_tournament);
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j)
            CHECK(t5_sub.edge(static_cast<int>(i), static_cast<int>(j)) ==
                  t5.edge(keep[i], keep[j]));
}

TEST_CASE("symmetrize is idempotent and preserves reflexivity") {
    for (int mask = 0; mask < 64; ++mask) {
        ReflexiveDigraph d(3);
        int bit = 0;
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                if (x == y) continue;
                if (mask & (1 << bit)) d.add_edge(x, y);
                ++bit;
            }
        auto s = symmetrize(d);
        CHECK(classify(s).is_graph);
        CHECK(symmetrize(s) == s);
        for (int v = 0; v < 3; ++v) CHECK(s.edge(v, v));
    }
    CHECK(symmetrize(build_copies_of_a2(1)).edge(1, 0));
    auto k3 = symmetrize(build_rotational_tournament(3));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) CHECK(k3.edge(x, y));
}

TEST_CASE("spectrum") {
    CHECK(spectrum(build_equilateral(3, Rational(1))) == std::vector<Rational>{Rational(1)});
    CHECK(spectrum(build_omega_truncation(4)) ==
          std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
    CHECK(spectrum(MetricSpace::point()).empty());
}

TEST_CASE("metric space validation") {
    CHECK_THROWS_AS(MetricSpace(2, {Rational(0), Rational(1), Rational(2), Rational(0)}),
                    std::invalid_argument);  // not symmetric
    CHECK_THROWS_AS(MetricSpace(2, {Rational(0), Rational(0), Rational(0), Rational(0)}),
                    std::invalid_argument);  // zero off-diagonal
    // triangle violation: d(0,2)=5 > 1+1
    std::vector<Rational> bad{Rational(0), Rational(1), Rational(5), Rational(1), Rational(0),
                              Rational(1), Rational(5), Rational(1), Rational(0)};
    CHECK_THROWS_AS(MetricSpace(3, bad), std::invalid_argument);
}

TEST_CASE("digraph vertex cap") {
    CHECK_THROWS_AS(ReflexiveDigraph(65), std::invalid_argument);
    CHECK_THROWS_AS(ReflexiveDigraph(0), std::invalid_argument);
    ReflexiveDigraph d(64);
    CHECK(d.size() == 64);
}

TEST_CASE("edge orders: tidiness") {
    auto a2 = build_copies_of_a2(1);
    EdgeOrder tidy({{0, 0}, {1, 1}, {0, 1}});
    CHECK(tidy.is_tidy(a2));
    EdgeOrder untidy({{0, 0}, {0, 1}, {1, 1}});
    CHECK(untidy.covers_all_edges(a2));
    CHECK_FALSE(untidy.loops_first());
    EdgeOrder partial({{0, 1}});
    CHECK(partial.covers_non_loops(a2));
    CHECK_FALSE(partial.is_tidy(a2));
    CHECK_THROWS_AS(EdgeOrder({{0, 0}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("structure json round trip") {
    std::vector<Structure> cases{
        Structure(Chain(4)),
        Structure(build_rotational_tournament(5)),
        Structure(build_copies_of_a2(3)),
        Structure(build_equilateral(3, Rational(3, 2))),
        Structure(build_omega_truncation(4)),
    };
    for (const auto& s : cases) {
        auto j = structure_to_json(s);
        auto back = structure_from_json(j);
        CHECK(structure_to_json(back) == j);
    }
    // reflexivity is enforced on input
    ordered_json bad = {{"kind", "digraph"}, {"n", 2}, {"adj", {{0, 1}, {0, 1}}}};
    CHECK_THROWS_AS(structure_from_json(bad), std::invalid_argument);
}

TEST_CASE("inline structure specs") {
    CHECK(std::get<Chain>(parse_structure_spec("chain:4")).size == 4);
    CHECK(std::get<ReflexiveDigraph>(parse_structure_spec("rot:5")).size() == 5);
    CHECK(std::get<ReflexiveDigraph>(parse_structure_spec("nA2:3")).size() == 6);
    auto e = std::get<MetricSpace>(parse_structure_spec("E:3:1"));
    CHECK(e.size() == 3);
    CHECK(e.at(0, 1) == Rational(1));
    auto eh = std::get<MetricSpace>(parse_structure_spec("E:2:3:2"));
    CHECK(eh.at(0, 1) == Rational(3, 2));
    CHECK(std::get<MetricSpace>(parse_structure_spec("omega:4")).size() == 4);
    CHECK(std::get<ReflexiveDigraph>(parse_structure_spec("B:2")).size() == 10);
    CHECK(std::get<ReflexiveDigraph>(parse_structure_spec("atour:3")).size() == 3);
    CHECK_THROWS_AS(parse_structure_spec("nosuch:7"), std::invalid_argument);
}
