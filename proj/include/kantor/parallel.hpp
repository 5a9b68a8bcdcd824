#pragma once

// Minimal worker pool for index-parallel loops. The worker count comes from
// set_thread_count(), else the KANTOR_THREADS environment variable, else the
// hardware concurrency.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kantor {

void set_thread_count(std::size_t n);
[[nodiscard]] std::size_t thread_count();

/// Calls f(i) for every i < n. Work is handed out in index order; callers that
/// need deterministic output must write results by index.
template <typename F>
void parallel_for(std::size_t n, F&& f)
{
    const std::size_t workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w)
        pool.emplace_back(body);
    body();
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace kantor
