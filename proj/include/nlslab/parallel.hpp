#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace nlslab {

// Static partition of [0, count) into `threads` contiguous chunks, one worker
// each. Deterministic: chunk boundaries depend only on (count, threads), and
// callers merge per-chunk results in chunk order.
template <class Fn>
void parallel_chunks(std::size_t count, int threads, Fn&& fn) {
    if (threads < 1) threads = 1;
    if (count == 0) return;
    if (threads == 1 || count < 2) {
        fn(0, std::size_t{0}, count);
        return;
    }
    std::size_t nchunk = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(nchunk);
    for (std::size_t c = 0; c < nchunk; ++c) {
        std::size_t lo = count * c / nchunk;
        std::size_t hi = count * (c + 1) / nchunk;
        pool.emplace_back([&fn, c, lo, hi] { fn(static_cast<int>(c), lo, hi); });
    }
    for (auto& t : pool) t.join();
}

inline int default_threads() {
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

}  // namespace nlslab
