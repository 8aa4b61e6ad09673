#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "hexlab/rng.hpp"
#include "hexlab/seedsweep.hpp"

using namespace hexlab;

TEST_CASE("summarize") {
    const std::vector<double> triple{1.0, 1.0, 1.0};
    const auto t = summarize(triple);
    CHECK(t.mean == Catch::Approx(1.0));
    CHECK(t.std_dev == Catch::Approx(0.0).margin(1e-15));
    CHECK(t.range == 0.0);

    const std::vector<double> pair{0.0, 2.0};
    const auto p = summarize(pair);
    CHECK(p.mean == Catch::Approx(1.0));
    CHECK(p.std_dev == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
    CHECK(p.range == Catch::Approx(2.0));
    CHECK(p.min == 0.0);
    CHECK(p.max == 2.0);

    const std::vector<double> single{1.0};
    CHECK_THROWS_AS(summarize(single), validation_error);
}

TEST_CASE("summarize is permutation invariant") {
    std::vector<double> values{1.74, 1.76, 1.73, 1.77, 1.75, 1.761, 1.742};
    const auto a = summarize(values);
    SplitMix64 g(3);
    fisher_yates(std::span<double>(values), g);
    const auto b = summarize(values);
    CHECK(a.mean == Catch::Approx(b.mean).margin(1e-15));
    CHECK(a.std_dev == Catch::Approx(b.std_dev).margin(1e-15));
    CHECK(a.min == b.min);
    CHECK(a.max == b.max);
}

namespace {

// 30 values with mean 1.756, min 1.732, max 1.773, std ~0.009 (matches the
// published sweep summary to its printed precision).
std::vector<double> synthetic_sweep() {
    std::vector<double> v{1.732, 1.773};
    for (int i = 0; i < 14; ++i) v.push_back(1.763487);
    for (int i = 0; i < 14; ++i) v.push_back(1.749013);
    return v;
}

} // namespace

TEST_CASE("synthetic sweep reproduces the printed summary") {
    const auto s = summarize(synthetic_sweep());
    CHECK(s.n == 30);
    CHECK(s.mean == Catch::Approx(1.756).margin(5e-4));
    CHECK(s.std_dev == Catch::Approx(0.009).margin(5e-4));
    CHECK(s.range == Catch::Approx(0.041).margin(1e-9));
    CHECK(s.cv == Catch::Approx(0.0051).margin(5e-4));
}

TEST_CASE("classify_effect uses the inclusive min-max envelope") {
    const auto sweep = summarize(synthetic_sweep());
    CHECK(classify_effect(1.785, sweep).classification == NoiseClass::ExceedsNoiseHigh);
    CHECK(classify_effect(1.75, sweep).classification == NoiseClass::WithinNoise);
    CHECK(classify_effect(1.70, sweep).classification == NoiseClass::ExceedsNoiseLow);
    // boundaries are inclusive
    CHECK(classify_effect(sweep.max, sweep).classification == NoiseClass::WithinNoise);
    CHECK(classify_effect(sweep.min, sweep).classification == NoiseClass::WithinNoise);

    const auto v = classify_effect(1.785, sweep);
    CHECK(v.delta_vs_mean == Catch::Approx(1.785 - sweep.mean).margin(1e-12));
}

TEST_CASE("classification is monotone in the candidate") {
    const auto sweep = summarize(synthetic_sweep());
    int state = 0; // 0 = below, 1 = within, 2 = above
    for (double c = 1.60; c <= 1.90; c += 0.0005) {
        const auto cls = classify_effect(c, sweep).classification;
        const int now = cls == NoiseClass::ExceedsNoiseLow ? 0
                        : cls == NoiseClass::WithinNoise   ? 1
                                                           : 2;
        REQUIRE(now >= state);
        state = now;
    }
    CHECK(state == 2);
}
