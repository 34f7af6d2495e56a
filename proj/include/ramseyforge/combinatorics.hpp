#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ramseyforge {

inline std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("u64 product overflow");
    return r;
}

inline std::uint64_t factorial_u64(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative");
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r = checked_mul_u64(r, static_cast<std::uint64_t>(i));
    return r;
}

inline std::uint64_t pow2_u64(int e) {
    if (e < 0 || e >= 64) throw std::overflow_error("2^e out of u64 range");
    return std::uint64_t{1} << e;
}

// All permutations of 0..n-1 in lexicographic order.
inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Lexicographic rank of a permutation of 0..n-1 (0-based, via Lehmer code).
inline std::uint64_t permutation_lex_rank(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (perm[j] < perm[i]) ++smaller;
        rank += static_cast<std::uint64_t>(smaller) * factorial_u64(n - 1 - i);
    }
    return rank;
}

}  // namespace ramseyforge
