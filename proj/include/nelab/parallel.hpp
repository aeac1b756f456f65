#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace nelab {

/// Runs fn(0..n-1) across `workers` threads. Each index writes only its own
/// output slot, so results are independent of the thread count; reductions
/// happen serially afterwards.
inline void for_each_index(int n, int workers, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    if (workers <= 1 || n == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    const int count = std::min(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (int w = 0; w < count; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += count) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace nelab
