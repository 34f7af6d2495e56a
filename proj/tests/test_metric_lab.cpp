#include <catch2/catch.hpp>

#include <random>

#include "oracles.hpp"
#include "ramseyforge/combinatorics.hpp"
#include "ramseyforge/metric_lab.hpp"

using namespace ramseyforge;

TEST_CASE("universal projection: pinned examples") {
    auto pt = universal_projection(MetricSpace::point());
    CHECK(pt.prefix_len == 1);
    CHECK(pt.q == std::vector<int>{0});

    // E_{2,1}: l_1 = 1, n_1 = 2, N = 3, q = [x0, x0, x1]
    auto e2 = build_equilateral(2, Rational(1));
    auto up = universal_projection(e2);
    CHECK(up.prefix_len == 3);
    CHECK(up.q == std::vector<int>{0, 0, 1});
    CHECK(validate_universal_projection(e2, up).ok);

    auto o3 = build_omega_truncation(3);
    auto up3 = universal_projection(o3);
    CHECK(validate_universal_projection(o3, up3).ok);
}

TEST_CASE("universal projection: fractional distances round through floor+1") {
    auto m = build_equilateral(2, Rational(5, 2));
    auto up = universal_projection(m);
    CHECK(up.plateau_starts == std::vector<std::int64_t>{0, 3});  // floor(5/2)+1
    CHECK(validate_universal_projection(m, up).ok);
}

TEST_CASE("universal projection: 200 random rational metric spaces validate") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        MetricSpace m = oracles::random_metric_space(rng, 5, 10);
        auto up = universal_projection(m);
        auto res = validate_universal_projection(m, up);
        INFO("trial " << trial << ": " << res.reason);
        CHECK(res.ok);
    }
}

TEST_CASE("universal projection: plateau monotonicity makes q rigid for natural orders") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        MetricSpace m = oracles::random_metric_space(rng, 5, 10);
        auto up = universal_projection(m);
        CHECK(oracles::rigid_surjection_chains(up.q, m.size()));
        CHECK(std::is_sorted(up.q.begin(), up.q.end()));
    }
}

TEST_CASE("split_by_threshold: pinned examples") {
    // E_{2,1} at threshold 1: exactly the one bipartition
    auto s1 = split_by_threshold(build_equilateral(2, Rational(1)), Rational(1));
    REQUIRE(s1.size() == 1);
    CHECK(s1[0] == std::vector<int>{0, 1});

    // E_{3,1} at threshold 2: cross distances would need >= 2, impossible
    CHECK(split_by_threshold(build_equilateral(3, Rational(1)), Rational(2)).empty());

    // Omega_4 at threshold 3: only {0,1,2} | {3}
    auto s3 = split_by_threshold(build_omega_truncation(4), Rational(3));
    REQUIRE(s3.size() == 1);
    CHECK(s3[0] == std::vector<int>{0, 0, 0, 1});
}

TEST_CASE("split_by_threshold maps are non-expansive surjections onto E_{2,l}") {
    auto u = build_omega_truncation(5);
    for (const auto& ell : {Rational(1), Rational(2), Rational(7, 2)}) {
        for (const auto& f : split_by_threshold(u, ell)) {
            auto e = build_equilateral(2, ell);
            CHECK(check(f, OrderedStructure(Structure(u)), OrderedStructure(Structure(e)),
                        MorphismKind::nonexpansive_surjection)
                      .ok);
        }
    }
}

TEST_CASE("split_by_threshold agrees with the direct bipartition predicate up to n = 10") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 25; ++trial) {
        MetricSpace m = oracles::random_metric_space(rng, 6, 6);
        for (int ell = 1; ell <= 6; ++ell) {
            auto fast = split_by_threshold(m, Rational(ell));
            // direct scan over all 2^{n-1} bipartitions with point 0 in block 0
            std::vector<std::vector<int>> slow;
            int n = m.size();
            for (std::uint32_t mask = 1; n >= 2 && mask < (1u << (n - 1)); ++mask) {
                std::vector<int> f(n, 0);
                for (int i = 1; i < n; ++i) f[i] = (mask >> (n - 1 - i)) & 1u;
                bool ok = true;
                for (int i = 0; i < n && ok; ++i)
                    for (int j = i + 1; j < n && ok; ++j)
                        if (f[i] != f[j] && m.at(i, j) < Rational(ell)) ok = false;
                if (ok) slow.push_back(f);
            }
            CHECK(fast == slow);
        }
    }
    // n = 10 equilateral: every bipartition qualifies at threshold 1
    auto e10 = build_equilateral(10, Rational(1));
    CHECK(split_by_threshold(e10, Rational(1)).size() == (1u << 9) - 1);
    // n = 10 max-metric: all 2^9 bipartitions against the direct predicate
    auto o10 = build_omega_truncation(10);
    for (int ell : {4, 7}) {
        auto fast = split_by_threshold(o10, Rational(ell));
        std::vector<std::vector<int>> slow;
        for (std::uint32_t mask = 1; mask < (1u << 9); ++mask) {
            std::vector<int> f(10, 0);
            for (int i = 1; i < 10; ++i) f[i] = (mask >> (9 - i)) & 1u;
            bool ok = true;
            for (int i = 0; i < 10 && ok; ++i)
                for (int j = i + 1; j < 10 && ok; ++j)
                    if (f[i] != f[j] && o10.at(i, j) < Rational(ell)) ok = false;
            if (ok) slow.push_back(f);
        }
        CHECK(fast == slow);
    }
}

TEST_CASE("self_similar_rigid: pinned examples") {
    auto id = self_similar_rigid(LinearOrder::identity(4));
    CHECK(id.r == std::vector<int>{0, 1, 2, 3});
    CHECK(id.complete);
    CHECK(id.image_size == 4);

    auto r = self_similar_rigid(LinearOrder({2, 0, 3, 1}));
    CHECK(r.r[2] == 0);
    CHECK(r.r[0] == 0);
    CHECK(r.r[3] == 1);
    CHECK(r.r[1] == 1);
    CHECK(r.complete);
    CHECK(r.image_size == 2);

    auto two = self_similar_rigid(LinearOrder({1, 0}));
    CHECK(two.r == std::vector<int>{0, 0});
    CHECK(two.complete);
    CHECK(two.image_size == 1);  // image truncated to {0}
}

TEST_CASE("self_similar_rigid validates over every prefix order up to n = 6") {
    for (int n = 1; n <= 6; ++n) {
        for (const auto& perm : all_permutations(n)) {
            LinearOrder order(perm);
            auto res = self_similar_rigid(order);  // step assertion n_k >= k inside
            validate_self_similar(order, res);
            CHECK(res.complete);
            // r never sends a value above itself
            for (int v = 0; v < n; ++v) CHECK(res.r[v] <= v);
        }
    }
}
