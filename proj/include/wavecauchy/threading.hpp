#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace wavecauchy {

inline std::atomic<unsigned>& thread_count_override() {
    static std::atomic<unsigned> count{0};
    return count;
}

/// 0 restores the default (hardware concurrency).
inline void set_thread_count(unsigned n) { thread_count_override() = n; }

inline unsigned effective_thread_count() {
    unsigned n = thread_count_override().load();
    if (n == 0) n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// Parallel map over [0, n). Results must be written to per-index slots so
/// the outcome is independent of the thread count; reductions are then done
/// serially by the caller.
template <typename F>
void parallel_for(std::size_t n, F&& body, unsigned threads = 0) {
    if (threads == 0) threads = effective_thread_count();
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        // chunked self-scheduling; chunk keeps contention low on fine grains
        const std::size_t chunk = std::max<std::size_t>(1, n / (threads * 8));
        for (;;) {
            std::size_t begin = next.fetch_add(chunk);
            if (begin >= n || failed.load(std::memory_order_relaxed)) break;
            std::size_t end = std::min(begin + chunk, n);
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace wavecauchy
