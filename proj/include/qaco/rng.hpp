#pragma once

#include <cstdint>

namespace qaco {

// Deterministic random stream (xoshiro256++ seeded via splitmix64).
// All stochastic code takes one of these by reference; there is no global
// RNG anywhere in the project. Streams derived with derive() are stable
// functions of (seed, tag), so experiment substreams cannot be reordered
// by scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Independent substream; same (seed, tag) always yields the same stream.
    Rng derive(std::uint64_t tag) const { return Rng(mix(seed_, tag)); }

    // Stable seed combiner used for per-(instance, algorithm, run) substreams.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t x = a ^ (0x9e3779b97f4a7c15ULL + b + (a << 6) + (a >> 2));
        return splitmix64(x);
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t splitmix64(std::uint64_t&& x) {
        std::uint64_t v = x;
        return splitmix64(v);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t seed_;
    std::uint64_t state_[4];
};

} // namespace qaco
