#pragma once

#include <cstdint>

namespace ccsim {

// splitmix64, used only to expand seeds into generator state.
inline uint64_t splitmix64_next(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** with per-stream seeding. Trial t of a run with master seed m
// draws from the stream derived from (m, t), so results do not depend on how
// trials are distributed over threads.
class Rng {
  public:
    Rng() : Rng(0, 0) {}

    Rng(uint64_t master_seed, uint64_t stream) { reseed(master_seed, stream); }

    void reseed(uint64_t master_seed, uint64_t stream) {
        // Mix the stream index in with a distinct odd constant so that
        // (m, t) and (m', t') collisions require a full 128-bit collision.
        uint64_t x = master_seed ^ (stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
        s_[0] = splitmix64_next(x);
        s_[1] = splitmix64_next(x);
        s_[2] = splitmix64_next(x);
        s_[3] = splitmix64_next(x);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        // Rejection-free multiply-shift; bias is < n / 2^64, irrelevant here,
        // but we keep Lemire's rejection loop so branch distributions are exact.
        uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        uint64_t lo = static_cast<uint64_t>(m);
        if (lo < n) {
            uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4];
};

}  // namespace ccsim
