#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rad {

/// Runs fn(i) for i in [0, n) across hardware threads. Workers must only
/// write to disjoint slots; all shared inputs stay immutable.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         std::size_t grain = 64) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || n < 2 * grain) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned workers = hw;
    std::vector<std::thread> pool;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace rad
