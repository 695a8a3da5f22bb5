#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace harqee::detail {

inline unsigned resolve_workers(unsigned requested, std::size_t tasks)
{
    unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (tasks < n) n = static_cast<unsigned>(std::max<std::size_t>(tasks, 1));
    return n;
}

/// Runs body(i) for i in [0, count) on up to `workers` threads (0 = hardware
/// concurrency). Tasks are claimed dynamically; results must be written to
/// per-index slots so that the outcome is independent of scheduling.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body)
{
    const unsigned n = resolve_workers(workers, count);
    if (n <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(n - 1);
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(run);
    run();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace harqee::detail
