#ifndef AXISPROBE_RNG_HPP
#define AXISPROBE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace axisprobe::rng {

// splitmix64: the stream generator behind every seeded experiment. Chosen
// over std::mt19937/std::*_distribution because the standard distributions
// are implementation-defined; this generator produces identical streams on
// every platform, which the determinism contract requires.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n) by rejection; unbiased and portable.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = -n % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Standard normal via Box-Muller (no cached second value, so the
    // consumed stream length per call is fixed).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    SplitMix64 g(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
    return g.next();
}

inline std::uint64_t hash_string(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derived stream seed for repetition `rep` of a named experiment slice.
// Parallel scheduling cannot change the stream a repetition sees.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t slice,
                                 std::uint64_t rep) {
    return mix(mix(mix(master, hash_string(tag)), slice), rep);
}

// k distinct indices drawn uniformly from [0, n), in draw order
// (partial Fisher-Yates over an index table).
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, SplitMix64& gen) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(gen.bounded(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace axisprobe::rng

#endif
