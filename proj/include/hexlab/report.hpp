#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hexlab/errors.hpp"
#include "hexlab/hexagram.hpp"
#include "hexlab/metrics.hpp"
#include "hexlab/permtest.hpp"
#include "hexlab/rng.hpp"
#include "hexlab/stattests.hpp"

namespace hexlab {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Seed-domain tags; every piece of randomness derives from the one
// user-facing master seed.
inline constexpr std::uint64_t kSeedTagBaseline = 1;
inline constexpr std::uint64_t kSeedTagCalibration = 2;

inline Ordering resolve_ordering(const std::string& name,
                                 ShaoYongConvention convention = ShaoYongConvention::Reversed) {
    if (name == "kingwen") return king_wen_ordering();
    if (name == "shaoyong") return shao_yong_ordering(convention);
    if (name == "binary") return binary_ordering();
    throw validation_error("unknown ordering: " + name);
}

enum class SeriesKind { Surprise, Hamming };

// The per-transition series the comparison tests run on.
inline std::vector<double> ordering_series(const SurpriseModel& model, const Ordering& o,
                                           SeriesKind kind) {
    if (kind == SeriesKind::Surprise) return surprise_profile(model, o).values;
    return hamming_series(o.sequence);
}

struct RandomBaseline {
    std::vector<std::vector<double>> profiles; // one series per permutation
    std::vector<double> pooled;                // all values concatenated
};

inline RandomBaseline random_baseline(const SurpriseModel& model, std::size_t n_permutations,
                                      std::uint64_t master_seed, SeriesKind kind) {
    if (n_permutations == 0)
        throw validation_error("random baseline needs at least one permutation");
    const std::uint64_t base = derive_seed(master_seed, kSeedTagBaseline);
    RandomBaseline rb;
    rb.profiles.reserve(n_permutations);
    rb.pooled.reserve(n_permutations * 63);
    for (std::size_t i = 0; i < n_permutations; ++i) {
        SplitMix64 rng = substream(base, i);
        const auto codes = detail::random_permutation(rng);
        Ordering o{"random", codes};
        auto series = ordering_series(model, o, kind);
        rb.pooled.insert(rb.pooled.end(), series.begin(), series.end());
        rb.profiles.push_back(std::move(series));
    }
    return rb;
}

inline nlohmann::json to_json(const MonteCarloReport& r) {
    return {{"statistic", r.statistic}, {"observed", r.observed},
            {"null_mean", r.null_mean}, {"null_std", r.null_std},
            {"percentile", r.percentile}, {"n_samples", r.n_samples},
            {"master_seed", r.master_seed}};
}

inline nlohmann::json to_json(const TestResult& r) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    return {{"test", r.test}, {"statistic", r.statistic}, {"p_value", r.p_value},
            {"params", params}};
}

inline nlohmann::json summary_json(const ProfileSummary& s) {
    return {{"mean", s.mean}, {"std", s.std_dev}, {"variance", s.variance},
            {"min", s.min}, {"max", s.max}};
}

inline nlohmann::json model_json(const SurpriseModel& m) {
    return {{"line_weights", m.line_weights}, {"change_up", m.change_up},
            {"asymmetry", m.asymmetry}, {"nuclear_weight", m.nuclear_weight}};
}

// Surprise-distribution summaries for the three systematic orderings plus the
// random baseline (per-permutation means averaged, extremes pooled).
inline nlohmann::json summary_table(const SurpriseModel& model, const RandomBaseline& rb,
                                    ShaoYongConvention convention, SeriesKind kind) {
    nlohmann::json rows = nlohmann::json::array();
    for (const char* name : {"kingwen", "binary", "shaoyong"}) {
        const Ordering o = resolve_ordering(name, convention);
        auto row = summary_json(profile_summary(ordering_series(model, o, kind)));
        row["ordering"] = name;
        rows.push_back(std::move(row));
    }
    double mean = 0.0, sd = 0.0, var = 0.0;
    double lo = rb.pooled.front(), hi = rb.pooled.front();
    for (const auto& p : rb.profiles) {
        const auto s = profile_summary(p);
        mean += s.mean;
        sd += s.std_dev;
        var += s.variance;
        lo = std::min(lo, s.min);
        hi = std::max(hi, s.max);
    }
    const double n = static_cast<double>(rb.profiles.size());
    rows.push_back({{"ordering", "random"}, {"mean", mean / n}, {"std", sd / n},
                    {"variance", var / n}, {"min", lo}, {"max", hi},
                    {"n_permutations", rb.profiles.size()}});
    return rows;
}

// Pairwise KS/Levene matrix over the named orderings and the pooled random
// baseline, plus per-ordering Ljung-Box and the fraction of random
// permutations whose profile shows significant lag-5 autocorrelation.
inline nlohmann::json comparison_matrix(const SurpriseModel& model,
                                        const std::vector<std::string>& names,
                                        const RandomBaseline& rb, ShaoYongConvention convention,
                                        SeriesKind kind, bool run_ks, bool run_levene,
                                        bool run_ljungbox, std::size_t lags = 5) {
    std::vector<std::pair<std::string, std::vector<double>>> samples;
    for (const auto& n : names)
        samples.emplace_back(n, ordering_series(model, resolve_ordering(n, convention), kind));
    samples.emplace_back("random", rb.pooled);

    nlohmann::json out;
    if (run_ks || run_levene) {
        nlohmann::json ks_rows = nlohmann::json::array();
        nlohmann::json lev_rows = nlohmann::json::array();
        for (std::size_t i = 0; i < samples.size(); ++i) {
            for (std::size_t j = i + 1; j < samples.size(); ++j) {
                if (run_ks) {
                    auto row = to_json(ks_two_sample(samples[i].second, samples[j].second));
                    row["a"] = samples[i].first;
                    row["b"] = samples[j].first;
                    ks_rows.push_back(std::move(row));
                }
                if (run_levene) {
                    std::vector<std::vector<double>> groups{samples[i].second,
                                                            samples[j].second};
                    auto row = to_json(levene(groups, Centering::Mean));
                    row["a"] = samples[i].first;
                    row["b"] = samples[j].first;
                    lev_rows.push_back(std::move(row));
                }
            }
        }
        if (run_ks) out["ks"] = std::move(ks_rows);
        if (run_levene) out["levene"] = std::move(lev_rows);
    }
    if (run_ljungbox) {
        nlohmann::json lb_rows = nlohmann::json::array();
        for (const auto& [name, series] : samples) {
            if (name == "random") continue;
            auto row = to_json(ljung_box(series, lags));
            row["ordering"] = name;
            lb_rows.push_back(std::move(row));
        }
        std::size_t significant = 0;
        for (const auto& p : rb.profiles)
            if (ljung_box(p, lags).p_value < 0.05) ++significant;
        out["ljung_box"] = std::move(lb_rows);
        out["random_baseline"] = {
            {"n_permutations", rb.profiles.size()},
            {"fraction_ljung_box_significant",
             static_cast<double>(significant) / static_cast<double>(rb.profiles.size())},
            {"lags", lags}};
    }
    return out;
}

struct AnalysisConfig {
    std::string ordering = "kingwen";
    ShaoYongConvention convention = ShaoYongConvention::Reversed;
    std::size_t mc_samples = 100000;
    std::size_t random_profiles = 1000;
    std::uint64_t master_seed = 42;
    unsigned threads = 1;
    SurpriseModel model{};
};

// Full characterization pipeline: orderings -> profiles -> Monte Carlo ->
// hypothesis tests. Deterministic for a given config and seed; only
// duration_ms varies between runs.
inline nlohmann::json run_full_analysis(const AnalysisConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    config.model.validate();

    const Ordering target = resolve_ordering(config.ordering, config.convention);
    target.validate();

    nlohmann::json mc = nlohmann::json::array();
    for (Statistic s : {Statistic::MeanTransitionDistance, Statistic::Lag1Autocorrelation,
                        Statistic::YangBalancedGroups, Statistic::PairAsymmetry})
        mc.push_back(to_json(
            monte_carlo(target, s, config.mc_samples, config.master_seed, config.threads)));

    const auto rb = random_baseline(config.model, config.random_profiles, config.master_seed,
                                    SeriesKind::Surprise);

    nlohmann::json report;
    report["schema_version"] = kSchemaVersion;
    report["tool_version"] = std::string(kToolVersion);
    report["ordering"] = {{"name", target.name},
                          {"sequence", std::vector<int>(target.sequence.begin(),
                                                        target.sequence.end())}};
    report["monte_carlo"] = std::move(mc);
    report["surprise_summaries"] =
        summary_table(config.model, rb, config.convention, SeriesKind::Surprise);
    report["tests"] = comparison_matrix(config.model, {"kingwen", "binary", "shaoyong"}, rb,
                                        config.convention, SeriesKind::Surprise, true, true,
                                        true);
    report["model"] = model_json(config.model);
    report["seeds"] = {{"master_seed", config.master_seed},
                       {"baseline_seed", derive_seed(config.master_seed, kSeedTagBaseline)}};
    report["config"] = {{"mc_samples", config.mc_samples},
                        {"random_profiles", config.random_profiles},
                        {"threads", config.threads}};

    const auto t1 = std::chrono::steady_clock::now();
    report["duration_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return report;
}

} // namespace hexlab
