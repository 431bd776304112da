#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace axirh {

/// Worker count for data-parallel loops. AXIRH_THREADS caps it; unset means
/// hardware concurrency.
inline std::size_t thread_count() {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("AXIRH_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return std::min<std::size_t>(static_cast<std::size_t>(v), hw);
        } catch (...) {
        }
    }
    return hw;
}

/// Runs body(i) for i in [0, n). Each index is written by exactly one worker, so
/// results do not depend on the thread count.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
    std::size_t workers = std::min(thread_count(), n);
    if (workers <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace axirh
