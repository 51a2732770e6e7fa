#pragma once

#include <cstdint>
#include <vector>

namespace cmsr {

/// SplitMix64. Hand-rolled so params files, bench trials, and test
/// fixtures reproduce bit-identically across standard libraries.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound). Modulo bias is irrelevant at these bound
    /// sizes; determinism is what matters.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = std::size_t(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }
};

}  // namespace cmsr
