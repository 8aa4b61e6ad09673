#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hexlab/permtest.hpp"
#include "hexlab/stattests.hpp"

using namespace hexlab;

namespace {
const Ordering kKingWen = king_wen_ordering();
const Ordering kBinary = binary_ordering();
} // namespace

TEST_CASE("mean transition distance") {
    // King Wen transition sum is 211 over 63 steps.
    CHECK(mean_transition_distance(kKingWen.sequence) ==
          Catch::Approx(211.0 / 63.0).margin(1e-12));
    CHECK(mean_transition_distance(kKingWen.sequence) == Catch::Approx(3.35).margin(0.01));
    // Binary counting flips trailing bits: sum over k of popcount(k xor k+1) = 120.
    CHECK(mean_transition_distance(kBinary.sequence) ==
          Catch::Approx(120.0 / 63.0).margin(1e-12));
}

TEST_CASE("lag-1 autocorrelation formula") {
    std::vector<double> alternating;
    for (int i = 0; i < 5; ++i) {
        alternating.push_back(1.0);
        alternating.push_back(-1.0);
    }
    CHECK(lag1_autocorrelation(alternating) == Catch::Approx(-0.9).margin(1e-12));

    std::vector<double> increasing;
    for (int i = 1; i <= 10; ++i) increasing.push_back(i);
    CHECK(lag1_autocorrelation(increasing) > 0.0);

    const std::vector<double> constant(10, 3.0);
    CHECK_THROWS_AS(lag1_autocorrelation(constant), undefined_statistic_error);
    const std::vector<double> tiny{1.0, 2.0};
    CHECK_THROWS_AS(lag1_autocorrelation(tiny), validation_error);

    CHECK(lag1_autocorrelation(hamming_series(kKingWen.sequence)) ==
          Catch::Approx(-0.251).margin(0.005));
}

TEST_CASE("yang balanced groups") {
    CHECK(yang_balanced_group_count(kKingWen.sequence) == 7);
    // Binary ordering: group g holds 4*popcount(g)+4 yang lines; equal to 12
    // exactly when popcount(g) = 2, and C(4,2) = 6.
    CHECK(yang_balanced_group_count(kBinary.sequence) == 6);
}

TEST_CASE("pair asymmetry") {
    const auto pa = pair_asymmetry(kKingWen.sequence);
    CHECK(pa.within_mean == Catch::Approx(120.0 / 32.0).margin(1e-12));
    CHECK(pa.between_mean == Catch::Approx(91.0 / 31.0).margin(1e-12));
    CHECK(pa.between_mean == Catch::Approx(2.94).margin(0.02));
    CHECK(pa.diff == Catch::Approx(pa.within_mean - pa.between_mean).margin(1e-12));

    // Binary pairs differ only in the bottom line.
    CHECK(pair_asymmetry(kBinary.sequence).within_mean == Catch::Approx(1.0).margin(1e-12));

    // An ordering laid out as complement pairs has within-pair distance 6.
    Ordering comp{"complement_pairs", {}};
    for (int m = 0; m < 32; ++m) {
        comp.sequence[static_cast<std::size_t>(2 * m)] = static_cast<std::uint8_t>(m);
        comp.sequence[static_cast<std::size_t>(2 * m + 1)] = static_cast<std::uint8_t>(m ^ 63);
    }
    comp.validate();
    CHECK(pair_asymmetry(comp.sequence).within_mean == Catch::Approx(6.0).margin(1e-12));
}

TEST_CASE("monte carlo reports are deterministic and thread-invariant") {
    const auto a = monte_carlo(kKingWen, Statistic::MeanTransitionDistance, 2000, 42, 1);
    const auto b = monte_carlo(kKingWen, Statistic::MeanTransitionDistance, 2000, 42, 1);
    const auto c = monte_carlo(kKingWen, Statistic::MeanTransitionDistance, 2000, 42, 8);

    CHECK(a.observed == b.observed);
    CHECK(a.null_mean == b.null_mean);
    CHECK(a.null_std == b.null_std);
    CHECK(a.percentile == b.percentile);

    CHECK(a.null_mean == c.null_mean);
    CHECK(a.null_std == c.null_std);
    CHECK(a.percentile == c.percentile);

    const auto d = monte_carlo(kKingWen, Statistic::MeanTransitionDistance, 2000, 43, 1);
    CHECK(a.null_mean != d.null_mean);

    CHECK_THROWS_AS(monte_carlo(kKingWen, Statistic::MeanTransitionDistance, 50, 42),
                    validation_error);
}

TEST_CASE("monte carlo null converges to the closed-form transition mean") {
    // E[d] over ordered pairs is 3*64/63.
    const auto r = monte_carlo(kKingWen, Statistic::MeanTransitionDistance, 20000, 7);
    CHECK(r.null_mean == Catch::Approx(3.0 * 64.0 / 63.0).margin(0.005));
    CHECK(r.null_std == Catch::Approx(0.148).margin(0.02));
}

TEST_CASE("null percentile of a null draw is uniform") {
    // Score 200 null draws against fresh n=1000 nulls; the percentiles should
    // look uniform on (0, 100).
    const std::size_t trials = 200;
    std::vector<double> pct;
    pct.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 g = substream(1234, t);
        const auto codes = detail::random_permutation(g);
        Ordering o{"null_draw", codes};
        pct.push_back(
            monte_carlo(o, Statistic::MeanTransitionDistance, 1000, 1700 + t).percentile /
            100.0);
    }
    std::sort(pct.begin(), pct.end());
    double d = 0.0;
    for (std::size_t i = 0; i < pct.size(); ++i) {
        const double lo = static_cast<double>(i) / trials;
        const double hi = static_cast<double>(i + 1) / trials;
        d = std::max({d, std::abs(pct[i] - lo), std::abs(pct[i] - hi)});
    }
    // KS critical value at alpha = 0.001 for n = 200 is about 0.138.
    CHECK(d < 0.138);
}
