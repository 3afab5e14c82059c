#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qlat::detail {

// Runs fn(i) for i in [0, tasks) on up to `workers` threads. Callers write
// results into per-task slots, so the outcome does not depend on scheduling.
// The first exception thrown by any task is rethrown after all threads join.
template <class Fn>
void run_tasks(std::size_t tasks, int workers, Fn&& fn) {
    const std::size_t threads = std::min<std::size_t>(tasks, static_cast<std::size_t>(std::max(1, workers)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(tasks);
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace qlat::detail
