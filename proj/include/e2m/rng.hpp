#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace e2m {

// All randomness in the project flows from one master seed through named
// substreams, so independent pieces (data generation, init, dropout, ...)
// stay decoupled and every run is reproducible from the manifest.
inline std::uint64_t mix_seed(std::uint64_t seed, const std::string& stream) {
    // FNV-1a over the stream name, then a splitmix64 finalizer.
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : stream) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (h | 1ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, const std::string& stream) {
    return std::mt19937_64(mix_seed(seed, stream));
}

inline std::mt19937_64 make_rng(std::uint64_t seed, const std::string& stream, std::uint64_t index) {
    return std::mt19937_64(mix_seed(mix_seed(seed, stream), std::to_string(index)));
}

}  // namespace e2m
