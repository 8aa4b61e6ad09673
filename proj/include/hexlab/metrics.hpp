#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hexlab/errors.hpp"
#include "hexlab/hexagram.hpp"

namespace hexlab {

inline int hamming(Hexagram a, Hexagram b) {
    return std::popcount(static_cast<std::uint8_t>(a.code ^ b.code));
}

// Number of trigram slots (lower, upper) whose trigrams differ: 0..2.
inline int trigram_distance(Hexagram a, Hexagram b) {
    const auto ta = trigrams(a);
    const auto tb = trigrams(b);
    return int(ta.lower.code != tb.lower.code) + int(ta.upper.code != tb.upper.code);
}

// Hamming distance restricted to the inner four lines (positions 2-5): 0..4.
inline int nuclear_distance(Hexagram a, Hexagram b) {
    return std::popcount(static_cast<std::uint8_t>(((a.code ^ b.code) >> 1) & 0xF));
}

// Transition-similarity kernel. Each line scores 1 when unchanged, change_up
// for a yin->yang flip, and asymmetry*change_up for yang->yin. External
// similarity weights the six lines; the internal component applies the same
// scoring to the nuclear window with the middle weights renormalized.
struct SurpriseModel {
    std::array<double, 6> line_weights{0.03, 0.07, 0.15, 0.20, 0.25, 0.30}; // bottom to top
    double change_up = 0.3;      // score of a yin->yang changed line
    double asymmetry = 0.7;      // yang->yin score = asymmetry * change_up
    double nuclear_weight = 0.4; // lambda
    // Surprise uses the natural logarithm.

    void validate() const {
        double sum = 0.0;
        for (double w : line_weights) {
            if (w <= 0.0) throw validation_error("line weights must be positive");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw validation_error("line weights must sum to 1");
        if (!(change_up > 0.0 && change_up < 1.0))
            throw validation_error("change_up must lie in (0,1)");
        if (!(asymmetry * change_up > 0.0 && asymmetry * change_up < change_up))
            throw validation_error("asymmetric score must satisfy 0 < a*c < c");
        if (nuclear_weight < 0.0 || nuclear_weight > 1.0)
            throw validation_error("nuclear weight must lie in [0,1]");
    }
};

namespace detail {

inline double line_score(const SurpriseModel& m, int from, int to) {
    if (from == to) return 1.0;
    return from == 0 ? m.change_up : m.asymmetry * m.change_up;
}

} // namespace detail

// sim = (1-lambda)*external + lambda*internal, in (0, 1].
inline double pattern_similarity(const SurpriseModel& m, Hexagram a, Hexagram b) {
    double ext = 0.0;
    for (int k = 1; k <= 6; ++k)
        ext += m.line_weights[static_cast<std::size_t>(k - 1)] *
               detail::line_score(m, a.line(k), b.line(k));

    double wsum = 0.0;
    for (int k = 2; k <= 5; ++k) wsum += m.line_weights[static_cast<std::size_t>(k - 1)];
    double inner = 0.0;
    for (int k = 2; k <= 5; ++k)
        inner += m.line_weights[static_cast<std::size_t>(k - 1)] / wsum *
                 detail::line_score(m, a.line(k), b.line(k));

    return (1.0 - m.nuclear_weight) * ext + m.nuclear_weight * inner;
}

// S = -ln P(b|a) with P(b|a) taken as the pattern similarity.
inline double surprise(const SurpriseModel& m, Hexagram a, Hexagram b) {
    return -std::log(pattern_similarity(m, a, b));
}

// One surprise value per consecutive transition of an ordering.
struct SurpriseProfile {
    std::string source;
    std::vector<double> values; // 63 entries
};

inline SurpriseProfile surprise_profile(const SurpriseModel& m, const Ordering& ordering) {
    SurpriseProfile p{ordering.name, {}};
    p.values.reserve(63);
    for (int i = 1; i <= 63; ++i)
        p.values.push_back(surprise(m, ordering.at(i), ordering.at(i + 1)));
    return p;
}

struct ProfileSummary {
    double mean{};
    double std_dev{}; // n-1 denominator
    double variance{};
    double min{};
    double max{};
};

inline ProfileSummary profile_summary(std::span<const double> values) {
    if (values.empty())
        throw validation_error("cannot summarize an empty profile");
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double variance = values.size() > 1 ? ss / (n - 1.0) : 0.0;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return {mean, std::sqrt(variance), variance, *lo, *hi};
}

} // namespace hexlab
