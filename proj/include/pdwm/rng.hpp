#pragma once

#include <cstdint>
#include <cstddef>

namespace pdwm {

// Deterministic PRNG used for corpus synthesis, noise transforms and
// permutations. std::mt19937_64 would pin the engine but not the
// distributions, so both live here: xoshiro256++ seeded via splitmix64,
// with hand-rolled uniform/normal draws that behave identically on every
// platform and compiler.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& s : state_) s = splitmix64(x);
    }

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

    // Uniform integer in [0, bound) without modulo bias (Lemire).
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        while (true) {
            const std::uint64_t x = next_u64();
            const unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
            const std::uint64_t lo = static_cast<std::uint64_t>(m);
            if (lo >= bound || lo >= (-bound) % bound)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; second value cached.
    double next_normal();

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Derive an independent stream seed from (seed, index) pairs.
    static std::uint64_t splitmix_combine(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t x = seed;
        std::uint64_t a = splitmix64(x);
        x = a ^ (index * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull);
        return splitmix64(x);
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t state_[4]{};
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace pdwm
