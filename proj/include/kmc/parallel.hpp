#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kmc {

namespace detail {
inline std::atomic<unsigned>& thread_setting() {
    static std::atomic<unsigned> n{1};
    return n;
}
} // namespace detail

/// Worker threads used for degreewise loops. Results never depend on it.
inline unsigned worker_threads() { return detail::thread_setting().load(); }
inline void set_worker_threads(unsigned n) { detail::thread_setting().store(std::max(1u, n)); }

class ScopedWorkerThreads {
public:
    explicit ScopedWorkerThreads(unsigned n) : saved_(worker_threads()) { set_worker_threads(n); }
    ~ScopedWorkerThreads() { set_worker_threads(saved_); }
    ScopedWorkerThreads(const ScopedWorkerThreads&) = delete;
    ScopedWorkerThreads& operator=(const ScopedWorkerThreads&) = delete;

private:
    unsigned saved_;
};

/// Calls fn(i) for i in [0, n). Indices are handed out dynamically; the first
/// exception thrown by any call is rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(worker_threads(), n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace kmc
