#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ramseyforge {

inline int default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(worker, lo, hi) over contiguous ranges partitioning [0, total).
// Range boundaries depend only on `total` and `workers`, so any
// reduction that combines per-range results in range order is
// deterministic for every worker count. The first exception thrown by a
// worker is rethrown after all workers have joined.
inline void run_sharded(std::uint64_t total, int workers,
                        const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
    if (workers < 1) workers = 1;
    if (total == 0) return;
    if (static_cast<std::uint64_t>(workers) > total) workers = static_cast<int>(total);

    if (workers == 1) {
        fn(0, 0, total);
        return;
    }

    std::vector<std::thread> threads;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int i = 0; i < workers; ++i) {
        std::uint64_t lo = total / workers * i + std::min<std::uint64_t>(i, total % workers);
        std::uint64_t hi = total / workers * (i + 1) + std::min<std::uint64_t>(i + 1, total % workers);
        if (lo >= hi) continue;
        threads.emplace_back([&, i, lo, hi]() {
            try {
                fn(i, lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ramseyforge
