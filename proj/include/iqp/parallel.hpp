#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace iqp {

// Runs fn(begin, end) over `threads` contiguous blocks of [0, count).
// Block boundaries depend only on (count, threads).
template <typename Fn>
void parallel_blocks(std::size_t count, unsigned threads, Fn &&fn) {
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        fn(std::size_t{0}, count);
        return;
    }
    std::size_t per = (count + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (std::size_t b = 0; b < count; b += per) {
        std::size_t e = std::min(count, b + per);
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto &t : pool) {
        t.join();
    }
}

}  // namespace iqp
