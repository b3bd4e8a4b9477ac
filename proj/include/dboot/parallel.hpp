#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace dboot {

/// Run fn(i) for i in [0, count) on up to n_threads workers. Tasks pull
/// indices from a shared counter; callers must make each task write only to
/// its own slot so results are identical for every thread count. The first
/// exception thrown by a task is rethrown on the calling thread.
inline void parallel_for(std::size_t count, std::size_t n_threads,
                         const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    if (n_threads == 0) n_threads = std::thread::hardware_concurrency();
    if (n_threads <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (n_threads > count) n_threads = count;

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace dboot
