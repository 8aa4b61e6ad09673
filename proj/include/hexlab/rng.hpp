#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace hexlab {

// Stafford variant 13 finalizer; full-avalanche 64-bit mix.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// SplitMix64. Small, fast, and counter-based, which makes per-sample
// substreams trivial to derive and results independent of worker scheduling.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound). Multiply-shift; bias is O(bound/2^64).
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    // Standard normal via Box-Muller. Stateless across calls (no cached pair)
    // so the draw sequence depends only on the seed.
    double next_normal() noexcept {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::uint64_t state_;
};

// Independent substream for one sample index. The avalanche mix scatters
// starting states across the SplitMix64 orbit, so streams that each consume
// a bounded number of outputs do not overlap in practice.
inline constexpr SplitMix64 substream(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return SplitMix64(mix64(master_seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
}

// Domain separation for unrelated uses of one user-facing seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) noexcept {
    return mix64(master_seed ^ mix64(tag + 0x165667B19E3779F9ULL));
}

// In-place Fisher-Yates shuffle.
template <typename T>
void fisher_yates(std::span<T> values, SplitMix64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

} // namespace hexlab
