#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "core/common.hpp"

// Deterministic, cross-platform randomness.
//
// Engine: xoshiro256++ seeded through the splitmix64 finalizer. All floating
// point draws are derived from raw 64-bit outputs with fixed arithmetic, so a
// given seed reproduces bit-identical streams on every platform.
//
// Stream splitting rule: a master seed and a (purpose, index) pair are chained
// through the splitmix64 finalizer:
//
//     h = mix(master); h = mix(h ^ purpose); h = mix(h ^ index)
//
// and h seeds the substream. Purposes are fixed small constants (see
// stream_purpose below), index is the replicate/restart number.

namespace ann {

namespace rng_detail {

// splitmix64 finalizer (Vigna). Also used as the stream-splitting hash.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace rng_detail

enum class stream_purpose : std::uint64_t {
    anchors = 1,   // anchor subsampling
    kmeans = 2,    // k-means++ restart streams (index = restart)
    eigen = 3,     // Lanczos starting vectors
    synth = 4,     // dataset generation
    generic = 5,   // tests and ad-hoc draws
};

inline std::uint64_t derive_stream(std::uint64_t master, stream_purpose purpose,
                                   std::uint64_t index = 0) {
    using rng_detail::mix64;
    std::uint64_t h = mix64(master);
    h = mix64(h ^ static_cast<std::uint64_t>(purpose));
    h = mix64(h ^ index);
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the xoshiro state.
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x = rng_detail::mix64(x);
            word = x;
        }
        // xoshiro must not start from the all-zero state.
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[3] = 1;
    }

    std::uint64_t next_u64() {
        using rng_detail::rotl;
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

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased integer in [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw ArgumentError("Rng::below: bound must be positive");
        const std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Standard normal via Marsaglia polar, second deviate cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * f;
        have_cached_ = true;
        return u * f;
    }

    // m distinct indices from [0, n), ascending. Partial Fisher-Yates over an
    // index table, then sorted so downstream consumers are order-independent.
    std::vector<std::int64_t> sample_without_replacement(std::int64_t n, std::int64_t m);

private:
    std::uint64_t state_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

inline std::vector<std::int64_t> Rng::sample_without_replacement(std::int64_t n,
                                                                 std::int64_t m) {
    if (m < 0 || m > n) throw ArgumentError("sample_without_replacement: need 0 <= m <= n");
    std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (std::int64_t i = 0; i < m; ++i) {
        const std::int64_t j = i + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(m));
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace ann
