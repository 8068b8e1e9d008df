#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace qfi {

// Runs body(begin, end) over contiguous chunks of [0, n). The partition
// depends only on the thread count, and callers are expected to write to
// disjoint, index-addressed slots so results never depend on scheduling.
template <typename F>
void parallel_for(std::int64_t n, int threads, F&& body) {
    if (n <= 0) return;
    if (threads < 1) threads = 1;
    const std::int64_t chunks = std::min<std::int64_t>(threads, n);
    if (chunks == 1) {
        body(std::int64_t{0}, n);
        return;
    }
    const std::int64_t step = (n + chunks - 1) / chunks;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(chunks) - 1);
    for (std::int64_t c = 1; c < chunks; ++c) {
        const std::int64_t b = c * step;
        const std::int64_t e = std::min(n, b + step);
        if (b >= e) break;
        pool.emplace_back([&body, b, e] { body(b, e); });
    }
    body(std::int64_t{0}, std::min(n, step));
    for (auto& t : pool) t.join();
}

}  // namespace qfi
