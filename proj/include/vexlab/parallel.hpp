#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace vexlab {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(begin,end) over disjoint contiguous slices of [0,n). Results must
/// be written to per-index storage so the outcome is independent of the
/// thread count.
template <typename Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
    const int t = resolve_threads(threads);
    if (t <= 1 || n < 2) {
        fn(std::int64_t{0}, n);
        return;
    }
    const int used = static_cast<int>(std::min<std::int64_t>(t, n));
    std::vector<std::thread> pool;
    pool.reserve(used);
    const std::int64_t chunk = (n + used - 1) / used;
    for (int k = 0; k < used; ++k) {
        const std::int64_t b = k * chunk;
        const std::int64_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace vexlab
