#pragma once

// Minimal data-parallel helper over std::thread. Results are merged by the
// caller from per-worker state, so output never depends on scheduling.

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace polar {

unsigned worker_count();

// Calls body(worker, index) for index in [0, n), index assigned to worker
// index % workers (interleaved, which balances triangular loops).
template <typename Body>
void parallel_interleaved(std::size_t n, unsigned workers, Body&& body) {
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(0U, i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) body(w, i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace polar
