#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

// Seedable randomness built from two published, fixed algorithms so that
// every draw is reproducible from a single 64-bit seed:
//
//   - splitmix64 (Steele/Lea/Flood) expands seeds and derives sub-streams.
//   - xoshiro256** (Blackman/Vigna) generates the actual uint64 stream.
//
// Derived draws avoid std::uniform_*_distribution on purpose: those are
// implementation-defined. bounded() uses the 128-bit multiply-shift
// reduction, next_double() takes the top 53 bits, normal() is Box-Muller
// consuming exactly two doubles per call.
//
// Named sub-streams come from derive_stream(seed, label, index):
//   state0 = splitmix64_step(seed ^ fnv1a64(label))
//   state  = splitmix64_step(state0 + index * 0x9E3779B97F4A7C15)
// and `state` seeds the xoshiro256** state via four splitmix64 steps.

namespace copd {

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t splitmix64_step(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_step(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n) via 128-bit multiply-shift.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Standard normal via Box-Muller; consumes two doubles, discards the
    // paired variate so the stream position is call-count deterministic.
    double normal() {
        double u1 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Fisher-Yates, descending index order.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

inline Rng derive_stream(std::uint64_t seed, std::string_view label,
                         std::uint64_t index = 0) {
    std::uint64_t s0 = seed ^ fnv1a64(label);
    std::uint64_t mixed = splitmix64_step(s0);
    std::uint64_t s1 = mixed + index * 0x9E3779B97F4A7C15ull;
    return Rng(splitmix64_step(s1));
}

} // namespace copd
