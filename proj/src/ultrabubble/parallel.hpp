#ifndef ULTRABUBBLE_PARALLEL_HPP
#define ULTRABUBBLE_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ultrabubble {

/// ULTRABUBBLE_THREADS overrides the hardware concurrency.
inline size_t worker_count() {
    if (const char* env = std::getenv("ULTRABUBBLE_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<size_t>(v);
        } catch (...) {
        }
    }
    return std::max<size_t>(1, std::thread::hardware_concurrency());
}

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// body(begin, end) on each. The first exception thrown is rethrown.
template <typename Body>
void parallel_for(size_t n, Body&& body, size_t min_chunk = 64) {
    const size_t workers = std::min(worker_count(), std::max<size_t>(1, n / std::max<size_t>(1, min_chunk)));
    if (workers <= 1) {
        body(size_t{0}, n);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const size_t chunk = (n + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
        const size_t begin = w * chunk, end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_PARALLEL_HPP
