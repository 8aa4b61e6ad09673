#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "hexlab/errors.hpp"

namespace hexlab {

struct SweepSummary {
    std::size_t n{};
    double mean{};
    double std_dev{}; // n-1 denominator
    double min{};
    double max{};
    double range{};
    double cv{}; // std_dev / mean
};

inline SweepSummary summarize(std::span<const double> values) {
    if (values.size() < 2)
        throw validation_error("summarize: need at least 2 values");
    SweepSummary s;
    s.n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(ss / static_cast<double>(s.n - 1));
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;
    s.range = s.max - s.min;
    s.cv = s.mean != 0.0 ? s.std_dev / s.mean : 0.0;
    return s;
}

enum class NoiseClass { WithinNoise, ExceedsNoiseHigh, ExceedsNoiseLow };

inline const char* noise_class_name(NoiseClass c) {
    switch (c) {
        case NoiseClass::WithinNoise: return "within_noise";
        case NoiseClass::ExceedsNoiseHigh: return "exceeds_noise_high";
        case NoiseClass::ExceedsNoiseLow: return "exceeds_noise_low";
    }
    return "unknown";
}

struct EffectVerdict {
    double candidate{};
    double delta_vs_mean{};
    NoiseClass classification{};
};

// Noise floor is the observed min-max envelope, boundaries inclusive.
inline EffectVerdict classify_effect(double candidate, const SweepSummary& sweep) {
    EffectVerdict v;
    v.candidate = candidate;
    v.delta_vs_mean = candidate - sweep.mean;
    if (candidate > sweep.max)
        v.classification = NoiseClass::ExceedsNoiseHigh;
    else if (candidate < sweep.min)
        v.classification = NoiseClass::ExceedsNoiseLow;
    else
        v.classification = NoiseClass::WithinNoise;
    return v;
}

} // namespace hexlab
