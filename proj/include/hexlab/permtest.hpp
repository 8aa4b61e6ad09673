#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "hexlab/errors.hpp"
#include "hexlab/hexagram.hpp"
#include "hexlab/rng.hpp"

namespace hexlab {

// Consecutive Hamming distances of an ordering, as a length-63 series.
inline std::vector<double> hamming_series(std::span<const std::uint8_t> codes) {
    std::vector<double> out;
    out.reserve(codes.size() - 1);
    for (std::size_t i = 0; i + 1 < codes.size(); ++i)
        out.push_back(std::popcount(static_cast<std::uint8_t>(codes[i] ^ codes[i + 1])));
    return out;
}

inline double mean_transition_distance(std::span<const std::uint8_t> codes) {
    int sum = 0;
    for (std::size_t i = 0; i + 1 < codes.size(); ++i)
        sum += std::popcount(static_cast<std::uint8_t>(codes[i] ^ codes[i + 1]));
    return static_cast<double>(sum) / static_cast<double>(codes.size() - 1);
}

// r1 = sum_t (x_t - xbar)(x_{t+1} - xbar) / sum_t (x_t - xbar)^2
inline double lag1_autocorrelation(std::span<const double> series) {
    if (series.size() < 3)
        throw validation_error("lag-1 autocorrelation needs at least 3 values");
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(series.size());
    double num = 0.0, denom = 0.0;
    for (std::size_t t = 0; t < series.size(); ++t) {
        const double d = series[t] - mean;
        denom += d * d;
        if (t + 1 < series.size()) num += d * (series[t + 1] - mean);
    }
    if (denom == 0.0)
        throw undefined_statistic_error("lag-1 autocorrelation of a constant series");
    return num / denom;
}

// Of the 16 disjoint groups of 4 consecutive positions, how many carry
// exactly 12 yang lines (half of 24).
inline int yang_balanced_group_count(std::span<const std::uint8_t> codes) {
    int count = 0;
    for (std::size_t g = 0; g < 16; ++g) {
        int yang = 0;
        for (std::size_t j = 0; j < 4; ++j) yang += std::popcount(codes[4 * g + j]);
        if (yang == 12) ++count;
    }
    return count;
}

struct PairAsymmetry {
    double within_mean{};  // mean Hamming over the 32 pairs (2k-1, 2k)
    double between_mean{}; // mean Hamming over the 31 transitions (2k, 2k+1)
    double diff{};
};

inline PairAsymmetry pair_asymmetry(std::span<const std::uint8_t> codes) {
    int within = 0, between = 0;
    for (std::size_t k = 0; k < 32; ++k)
        within += std::popcount(static_cast<std::uint8_t>(codes[2 * k] ^ codes[2 * k + 1]));
    for (std::size_t k = 0; k + 1 < 32; ++k)
        between += std::popcount(static_cast<std::uint8_t>(codes[2 * k + 1] ^ codes[2 * k + 2]));
    PairAsymmetry r;
    r.within_mean = within / 32.0;
    r.between_mean = between / 31.0;
    r.diff = r.within_mean - r.between_mean;
    return r;
}

enum class Statistic {
    MeanTransitionDistance,
    Lag1Autocorrelation,
    YangBalancedGroups,
    PairAsymmetry, // within minus between
};

inline const char* statistic_name(Statistic s) {
    switch (s) {
        case Statistic::MeanTransitionDistance: return "mean_transition_distance";
        case Statistic::Lag1Autocorrelation: return "lag1_autocorrelation";
        case Statistic::YangBalancedGroups: return "yang_balanced_groups";
        case Statistic::PairAsymmetry: return "pair_asymmetry_diff";
    }
    return "unknown";
}

inline double evaluate_statistic(Statistic s, std::span<const std::uint8_t> codes) {
    switch (s) {
        case Statistic::MeanTransitionDistance:
            return mean_transition_distance(codes);
        case Statistic::Lag1Autocorrelation:
            return lag1_autocorrelation(hamming_series(codes));
        case Statistic::YangBalancedGroups:
            return yang_balanced_group_count(codes);
        case Statistic::PairAsymmetry:
            return pair_asymmetry(codes).diff;
    }
    throw validation_error("unknown statistic");
}

struct MonteCarloReport {
    std::string statistic;
    double observed{};
    double null_mean{};
    double null_std{};
    double percentile{}; // 0..100
    std::size_t n_samples{};
    std::uint64_t master_seed{};
};

namespace detail {

// Uniform random permutation of the 64 codes from one substream.
inline std::array<std::uint8_t, 64> random_permutation(SplitMix64& rng) {
    std::array<std::uint8_t, 64> codes;
    for (int i = 0; i < 64; ++i) codes[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    fisher_yates(std::span<std::uint8_t>(codes), rng);
    return codes;
}

} // namespace detail

// Null distribution of `statistic` over n uniform random permutations of the
// 64 hexagrams. Sample i draws from substream(master_seed, i), so the result
// is bit-identical for any thread count. Percentile is the fraction of null
// samples at or below the observed value, in percent.
inline MonteCarloReport monte_carlo(const Ordering& observed_ordering, Statistic statistic,
                                    std::size_t n, std::uint64_t master_seed,
                                    unsigned threads = 1) {
    if (n < 100)
        throw validation_error("monte_carlo needs at least 100 samples");

    const double observed = evaluate_statistic(statistic, observed_ordering.sequence);

    std::vector<double> samples(n);
    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            SplitMix64 rng = substream(master_seed, i);
            const auto codes = detail::random_permutation(rng);
            samples[i] = evaluate_statistic(statistic, codes);
        }
    };

    if (threads <= 1) {
        worker(0, n);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t lo = std::min<std::size_t>(t * chunk, n);
            const std::size_t hi = std::min<std::size_t>(lo + chunk, n);
            if (lo < hi)
                pool.emplace_back([&, lo, hi, t] {
                    try {
                        worker(lo, hi);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    // Deterministic reduction in index order.
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    std::size_t at_or_below = 0;
    for (double v : samples) {
        ss += (v - mean) * (v - mean);
        if (v <= observed) ++at_or_below;
    }

    MonteCarloReport r;
    r.statistic = statistic_name(statistic);
    r.observed = observed;
    r.null_mean = mean;
    r.null_std = std::sqrt(ss / static_cast<double>(n - 1));
    r.percentile = 100.0 * static_cast<double>(at_or_below) / static_cast<double>(n);
    r.n_samples = n;
    r.master_seed = master_seed;
    return r;
}

} // namespace hexlab
