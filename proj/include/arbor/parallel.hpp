#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace arbor {

/// Runs fn(chunk) for every chunk in [0, chunks). Chunks are claimed from an
/// atomic counter; callers must write results into pre-sized per-chunk slots
/// and merge them in chunk order afterwards, which keeps every aggregate
/// independent of the thread count and of scheduling.
inline void run_chunks(std::uint64_t chunks, unsigned threads,
                       const std::function<void(std::uint64_t)>& fn) {
    if (threads <= 1 || chunks <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            fn(c);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = threads < chunks ? threads : static_cast<unsigned>(chunks);
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

inline unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

} // namespace arbor
