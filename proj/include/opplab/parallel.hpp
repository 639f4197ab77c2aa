// Deterministic parallel-for.  Work is cut into fixed-size blocks whose
// boundaries do not depend on the thread count; each block writes only its
// own output range, so results are byte-identical for any schedule.

#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace opplab {

// Thread budget: explicit request > OPPLAB_THREADS env > 1.
inline int resolve_threads(int requested = 0) {
    if (requested > 0) return requested;
    if (requested < 0) return (int)std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("OPPLAB_THREADS")) {
        std::string s(env);
        if (s == "auto") return (int)std::max(1u, std::thread::hardware_concurrency());
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

// Runs fn(i0, i1) over [0, n) in blocks of `block` items.
inline void parallel_for_blocks(std::size_t n, std::size_t block, int threads,
                                const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (block == 0) block = 1;
    std::size_t nblocks = (n + block - 1) / block;
    if (threads <= 1 || nblocks == 1) {
        for (std::size_t b = 0; b < nblocks; ++b)
            fn(b * block, std::min(n, (b + 1) * block));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            fn(b * block, std::min(n, (b + 1) * block));
        }
    };
    std::vector<std::thread> pool;
    int use = (int)std::min<std::size_t>((std::size_t)threads, nblocks);
    pool.reserve((std::size_t)use);
    for (int i = 0; i < use; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace opplab
