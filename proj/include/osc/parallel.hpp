// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace osc {

/// Worker cap: OSCULANT_THREADS when set (>= 1), else the hardware count.
inline int worker_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("OSCULANT_THREADS")) {
            const int n = std::atoi(env);
            if (n >= 1) return n;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? static_cast<int>(hw) : 1;
    }();
    return cap;
}

/// Run fn(i) for i in [0, n).  Work items write to preallocated slots, so
/// aggregation order stays deterministic regardless of the worker count.
/// The first exception thrown by any item is rethrown on the caller.
template <class Fn>
void parallel_for(int n, Fn&& fn) {
    const int workers = std::min(worker_cap(), std::max(1, n));
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
}

}  // namespace osc
