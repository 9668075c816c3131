#pragma once

#include <cstdint>
#include <random>

namespace hps {

// Deterministic RNG handle, threaded explicitly through every sampler.
// No global state; fork() derives independent streams for parallel tasks
// so results do not depend on the worker count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed ^ 0x9e3779b97f4a7c15ull), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, bound), bound >= 1. Rejection keeps it unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    bool next_bit() { return (engine_() >> 63) != 0; }

    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (one value per call, cached pair dropped).
    double next_normal() {
        double u1 = 0.0;
        while (u1 == 0.0) u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    // Independent child stream indexed by task id (splitmix64 of seed, index).
    Rng fork(std::uint64_t index) const {
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ull * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return Rng(z ^ (z >> 31));
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace hps
