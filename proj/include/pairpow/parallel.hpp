/* parallel.hpp -- deterministic work distribution for long scans */
#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pairpow {

/* Applies fn(i) for i in [0, n) using up to `jobs` worker threads and
 * returns the results indexed by i.  Each result is written to its own
 * slot, so the output is independent of scheduling; callers that fold
 * the vector left-to-right therefore get the same answer for any job
 * count.  The first exception thrown by any worker is rethrown on the
 * calling thread after all workers have stopped. */
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, unsigned jobs, Fn&& fn) {
    std::vector<R> out(n);
    if (n == 0) return out;
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        try {
            std::size_t i;
            while ((i = next.fetch_add(1, std::memory_order_relaxed)) < n)
                out[i] = fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            next.store(n, std::memory_order_relaxed);  // stop claiming work
        }
    };

    std::size_t nthreads = std::min<std::size_t>(jobs, n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace pairpow
