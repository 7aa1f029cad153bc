#pragma once

#include <cstdint>

namespace pairsim {

// Small counter-style generator with explicitly keyed streams. Every sample
// of every walk gets its own stream derived from (seed, payload words), so a
// draw sequence never depends on how work was scheduled across threads.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n); n must be positive.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

// Derives an independent stream key from a base seed and two payload words.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t w0,
                                   std::uint64_t w1) {
    std::uint64_t k = detail::mix64(seed ^ 0x6A09E667F3BCC909ull);
    k = detail::mix64(k ^ (w0 + 0x9E3779B97F4A7C15ull));
    k = detail::mix64(k ^ (w1 + 0x3C6EF372FE94F82Bull));
    return k;
}

}  // namespace pairsim
