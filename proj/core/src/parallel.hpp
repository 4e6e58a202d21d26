#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace portinspect::detail {

inline std::size_t resolve_workers(std::size_t requested, std::size_t tasks) {
    std::size_t w = requested;
    if (w == 0) w = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(w, tasks));
}

/// Runs fn(i) for i in [0, count) on up to `workers` threads (0 = hardware
/// concurrency). Callers write results by index, so the outcome does not
/// depend on scheduling. The first exception thrown by a task is rethrown.
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
    if (count == 0) return;
    workers = resolve_workers(workers, count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= count) return;
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next.store(count);
                        return;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

} // namespace portinspect::detail
