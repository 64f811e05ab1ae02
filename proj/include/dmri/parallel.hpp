#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace dmri {

// Static range partition across workers. Safe only when iterations write to
// disjoint locations; results are then identical for any worker count.
inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::size_t nw = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t t = 0; t < nw; ++t) {
        std::size_t lo = n * t / nw;
        std::size_t hi = n * (t + 1) / nw;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

} // namespace dmri
