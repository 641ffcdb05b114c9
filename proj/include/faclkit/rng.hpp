#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace faclkit {

/// Engine used for every random stream in the toolkit. mt19937_64's output
/// sequence is fixed by the C++ standard, so streams are portable.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// FNV-1a, used to turn a stream name into a stable tag.
constexpr std::uint64_t name_tag(std::string_view name) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Seed of the stream (master, name, index):
///   mix64(mix64(master ^ fnv1a(name)) + index)
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view name,
                                    std::uint64_t index = 0) noexcept {
    return mix64(mix64(master ^ name_tag(name)) + index);
}

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double uniform01(Engine& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

} // namespace faclkit
