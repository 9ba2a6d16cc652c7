#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

// Chunked parallel-for over an index range. Every call site writes to
// disjoint, preallocated output slots, so results are identical for any
// thread count.

namespace ann {

namespace parallel_detail {
inline std::atomic<int>& thread_limit() {
    static std::atomic<int> limit{0};  // 0 = hardware concurrency
    return limit;
}
}  // namespace parallel_detail

inline void set_max_threads(int n) { parallel_detail::thread_limit().store(n < 0 ? 0 : n); }

inline int max_threads() {
    int limit = parallel_detail::thread_limit().load();
    if (limit <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        limit = hw == 0 ? 1 : static_cast<int>(hw);
    }
    return limit;
}

// body(lo, hi) runs on a contiguous chunk [lo, hi).
template <class Body>
void parallel_for(std::int64_t begin, std::int64_t end, const Body& body) {
    const std::int64_t count = end - begin;
    if (count <= 0) return;
    int workers = max_threads();
    if (workers > count) workers = static_cast<int>(count);
    if (workers <= 1) {
        body(begin, end);
        return;
    }

    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = begin + w * chunk;
        const std::int64_t hi = lo + chunk < end ? lo + chunk : end;
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace ann
