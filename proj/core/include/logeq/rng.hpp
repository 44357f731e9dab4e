#pragma once

#include <cstdint>
#include <cstring>
#include <random>
#include <string_view>

namespace logeq {

// SplitMix64 mixer. Seed derivation goes through this so that per-trial
// streams are stable regardless of platform RNG internals.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return splitmix64(h ^ (splitmix64(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

// FNV-1a, 64 bit.
inline std::uint64_t hash_string(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t hash_double(std::uint64_t h, double v) {
    if (v == 0.0) v = 0.0;  // collapse -0 and +0
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof v);
    std::memcpy(&bits, &v, sizeof bits);
    return hash_combine(h, bits);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

}  // namespace logeq
