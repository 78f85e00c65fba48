#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace spikescope {

/// Worker cap: min(hardware threads, SPIKESCOPE_THREADS when set), at least 1.
std::size_t worker_count();

/// Runs f(i) once for each i in [0, n). Callers must write results into
/// index-addressed slots; reductions happen on the calling thread afterwards,
/// which keeps results independent of the worker count.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                f(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace spikescope
