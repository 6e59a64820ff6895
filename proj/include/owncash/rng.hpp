#pragma once

#include <array>
#include <cstdint>

namespace owncash {

// splitmix64 (Steele, Lea, Flood 2014). Fixed algorithm and constants so
// that seeded runs replay identically on any platform. Every seeded stream
// in the simulator and the scenario harness draws from this generator.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform-enough draw in [0, n); n == 0 yields 0.
    uint64_t next_below(uint64_t n) { return n == 0 ? 0 : next() % n; }
};

// Decorrelated child-stream seed for (root, domain, index). Used to give the
// issuer, each node identity, each rotation stream and the delivery policy
// their own independent deterministic streams.
inline uint64_t derive_seed(uint64_t root, uint64_t domain, uint64_t index = 0) {
    SplitMix64 g(root ^ (0x9e3779b97f4a7c15ULL * (domain + 1)) ^
                 (0xbf58476d1ce4e5b9ULL * (index + 1)));
    return g.next();
}

// 32 key-seed bytes drawn from a stream, little-endian word fill.
inline std::array<uint8_t, 32> make_seed(SplitMix64& g) {
    std::array<uint8_t, 32> seed;
    for (size_t word = 0; word < 4; ++word) {
        uint64_t v = g.next();
        for (size_t i = 0; i < 8; ++i) {
            seed[word * 8 + i] = static_cast<uint8_t>(v >> (8 * i));
        }
    }
    return seed;
}

inline std::array<uint8_t, 32> make_seed(uint64_t stream_seed) {
    SplitMix64 g(stream_seed);
    return make_seed(g);
}

}  // namespace owncash
