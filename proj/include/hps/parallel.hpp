#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace hps {

// Global worker cap for data-parallel loops. 0 = hardware concurrency.
void set_thread_cap(unsigned cap);
unsigned thread_cap();

namespace detail {

inline std::atomic<unsigned>& thread_cap_storage() {
    static std::atomic<unsigned> cap{0};
    return cap;
}

}  // namespace detail

inline void set_thread_cap(unsigned cap) { detail::thread_cap_storage().store(cap); }

inline unsigned thread_cap() {
    unsigned cap = detail::thread_cap_storage().load();
    if (cap == 0) {
        cap = std::thread::hardware_concurrency();
        if (cap == 0) cap = 1;
    }
    return cap;
}

// Runs fn(begin, end) over fixed-size blocks of [0, count). Blocks are
// dispatched dynamically but the block boundaries never depend on the
// worker count, so any per-block accumulation is reproducible.
template <typename Fn>
void parallel_blocks(std::uint64_t count, std::uint64_t block, Fn&& fn) {
    if (count == 0) return;
    const std::uint64_t nblocks = (count + block - 1) / block;
    unsigned workers = thread_cap();
    if (workers > nblocks) workers = static_cast<unsigned>(nblocks);
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            fn(b, b * block, std::min(count, (b + 1) * block));
        }
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            fn(b, b * block, std::min(count, (b + 1) * block));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// Deterministic parallel sum: per-block partials combined in block order,
// independent of how many threads ran.
template <typename T, typename Fn>
T block_sum(std::uint64_t count, std::uint64_t block, Fn&& per_index) {
    const std::uint64_t nblocks = count == 0 ? 0 : (count + block - 1) / block;
    std::vector<T> partials(nblocks, T{});
    parallel_blocks(count, block, [&](std::uint64_t b, std::uint64_t lo, std::uint64_t hi) {
        T acc{};
        for (std::uint64_t i = lo; i < hi; ++i) acc += per_index(i);
        partials[b] = acc;
    });
    T total{};
    for (const T& p : partials) total += p;
    return total;
}

}  // namespace hps
