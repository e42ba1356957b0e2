#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace walkmem {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the stream at `coordinates` under `master`: each coordinate is
/// folded in turn, s <- mix64(s ^ mix64(c)). Any cell of a sweep or any
/// trajectory block of a simulation can therefore be recomputed from the
/// master seed and its coordinates alone.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coordinates) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t c : coordinates) s = mix64(s ^ mix64(c));
    return s;
}

/// FNV-1a hash of a label, for folding names (strategies, datasets) into
/// derive_seed coordinates.
constexpr std::uint64_t hash_label(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) h = (h ^ c) * 0x100000001b3ULL;
    return h;
}

}  // namespace walkmem
