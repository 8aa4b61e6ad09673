#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>
#include <zlib.h>

#include "hexlab/errors.hpp"
#include "hexlab/hexagram.hpp"
#include "hexlab/metrics.hpp"
#include "hexlab/rng.hpp"

namespace hexlab {

inline constexpr std::size_t kProfileLength = 63;

// Affine min-max map onto [-1, +1]; a constant input maps to all zeros.
inline std::vector<double> center_profile(std::span<const double> raw) {
    if (raw.size() != kProfileLength)
        throw validation_error("profile must have exactly 63 values");
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    std::vector<double> out(raw.size(), 0.0);
    if (*hi > *lo) {
        const double span = *hi - *lo;
        for (std::size_t i = 0; i < raw.size(); ++i)
            out[i] = 2.0 * (raw[i] - *lo) / span - 1.0;
    }
    return out;
}

struct ModulationSchedule {
    std::vector<double> profile; // 63 centered values in [-1, 1]
    double amplitude{};
    std::size_t length{};        // default step count for emission
    std::string source;          // kingwen | shaoyong | random(seed)
};

// Multiplier at step t is 1 + A * profile[t mod 63].
inline std::vector<double> lr_multipliers(const ModulationSchedule& schedule,
                                          std::size_t n_steps) {
    if (n_steps < 1)
        throw validation_error("lr_multipliers: need at least one step");
    if (schedule.amplitude < 0.0)
        throw validation_error("lr_multipliers: amplitude must be nonnegative");
    if (schedule.profile.size() != kProfileLength)
        throw validation_error("lr_multipliers: profile must have 63 values");
    std::vector<double> out(n_steps);
    for (std::size_t t = 0; t < n_steps; ++t) {
        const double m = 1.0 + schedule.amplitude * schedule.profile[t % kProfileLength];
        if (m <= 0.0)
            throw validation_error("lr_multipliers: amplitude drives a multiplier to <= 0");
        out[t] = m;
    }
    return out;
}

// 63 i.i.d. uniform values on [-1, 1], then re-centered so the endpoints are
// exactly -1 and +1.
inline std::vector<double> random_profile(std::uint64_t seed) {
    SplitMix64 rng(mix64(seed));
    std::vector<double> raw(kProfileLength);
    for (double& v : raw) v = 2.0 * rng.next_double() - 1.0;
    return center_profile(raw);
}

inline std::vector<double> kingwen_profile(const SurpriseModel& model) {
    return center_profile(surprise_profile(model, king_wen_ordering()).values);
}

inline std::vector<double> shaoyong_profile(
    const SurpriseModel& model,
    ShaoYongConvention convention = ShaoYongConvention::Reversed) {
    return center_profile(surprise_profile(model, shao_yong_ordering(convention)).values);
}

// Lossless schedule serialization (17 significant digits survive the text
// round trip bit-exactly).
inline nlohmann::json to_json(const ModulationSchedule& s) {
    return {{"profile", s.profile}, {"amplitude", s.amplitude}, {"length", s.length},
            {"source", s.source}};
}

inline ModulationSchedule modulation_schedule_from_json(const nlohmann::json& j) {
    ModulationSchedule s;
    s.profile = j.at("profile").get<std::vector<double>>();
    s.amplitude = j.at("amplitude").get<double>();
    s.length = j.at("length").get<std::size_t>();
    s.source = j.at("source").get<std::string>();
    if (s.profile.size() != kProfileLength)
        throw validation_error("schedule profile must have 63 values");
    return s;
}

enum class CurriculumStrategy { Sequential, Random, EasyToHard, HardToEasy, KingWen };

inline const char* strategy_name(CurriculumStrategy s) {
    switch (s) {
        case CurriculumStrategy::Sequential: return "sequential";
        case CurriculumStrategy::Random: return "random";
        case CurriculumStrategy::EasyToHard: return "easy_to_hard";
        case CurriculumStrategy::HardToEasy: return "hard_to_easy";
        case CurriculumStrategy::KingWen: return "kingwen";
    }
    return "unknown";
}

struct CurriculumMapping {
    std::array<int, 64> emit_position{}; // buffer index -> emission position (0-indexed)
    CurriculumStrategy strategy{};
    std::vector<double> scores;
};

namespace detail {

// Indices 0..63 ranked by key ascending, ties broken by index (stable).
inline std::array<int, 64> stable_ranks(std::span<const double> keys, bool descending) {
    std::array<int, 64> idx;
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return descending ? keys[static_cast<std::size_t>(a)] > keys[static_cast<std::size_t>(b)]
                          : keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
    });
    return idx; // idx[rank] = original index
}

// Incoming-transition surprise per King Wen position; position 1 has no
// incoming transition and is assigned 0 (the lowest rank).
inline std::array<double, 64> kingwen_position_surprise(const SurpriseModel& model) {
    const Ordering kw = king_wen_ordering();
    std::array<double, 64> s{};
    s[0] = 0.0;
    for (int p = 2; p <= 64; ++p)
        s[static_cast<std::size_t>(p - 1)] = surprise(model, kw.at(p - 1), kw.at(p));
    return s;
}

} // namespace detail

// Maps 64 buffered micro-batches to emission positions. For the King Wen
// strategy, the batch at difficulty rank k is emitted at the position whose
// incoming-transition surprise has rank k.
inline CurriculumMapping curriculum_map(std::span<const double> scores,
                                        CurriculumStrategy strategy, std::uint64_t seed,
                                        const SurpriseModel& model = SurpriseModel{}) {
    if (scores.size() != 64)
        throw validation_error("curriculum_map: need exactly 64 scores");

    CurriculumMapping m;
    m.strategy = strategy;
    m.scores.assign(scores.begin(), scores.end());

    switch (strategy) {
        case CurriculumStrategy::Sequential: {
            std::iota(m.emit_position.begin(), m.emit_position.end(), 0);
            break;
        }
        case CurriculumStrategy::Random: {
            std::array<int, 64> pos;
            std::iota(pos.begin(), pos.end(), 0);
            SplitMix64 rng(derive_seed(seed, /*tag=*/7));
            fisher_yates(std::span<int>(pos), rng);
            m.emit_position = pos;
            break;
        }
        case CurriculumStrategy::EasyToHard:
        case CurriculumStrategy::HardToEasy: {
            const auto order =
                detail::stable_ranks(scores, strategy == CurriculumStrategy::HardToEasy);
            for (int rank = 0; rank < 64; ++rank)
                m.emit_position[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])] =
                    rank;
            break;
        }
        case CurriculumStrategy::KingWen: {
            const auto pos_surprise = detail::kingwen_position_surprise(model);
            const auto batch_by_rank = detail::stable_ranks(scores, false);
            const auto pos_by_rank = detail::stable_ranks(pos_surprise, false);
            for (int rank = 0; rank < 64; ++rank)
                m.emit_position[static_cast<std::size_t>(
                    batch_by_rank[static_cast<std::size_t>(rank)])] =
                    pos_by_rank[static_cast<std::size_t>(rank)];
            break;
        }
    }
    return m;
}

// |unique tokens| / |tokens|, in (0, 1].
inline double token_diversity(std::span<const std::uint32_t> tokens) {
    if (tokens.empty())
        throw validation_error("token_diversity: empty token list");
    std::unordered_set<std::uint32_t> unique(tokens.begin(), tokens.end());
    return static_cast<double>(unique.size()) / static_cast<double>(tokens.size());
}

// gzip-compressed size / original size. DEFLATE level 6 in a gzip container,
// pinned so ratios are stable across platforms.
inline double compression_ratio(std::span<const unsigned char> payload) {
    if (payload.empty())
        throw validation_error("compression_ratio: empty payload");

    z_stream zs{};
    // windowBits 15 + 16 selects the gzip wrapper.
    if (deflateInit2(&zs, 6, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw io_error("compression_ratio: deflateInit2 failed");

    const uLong bound = deflateBound(&zs, static_cast<uLong>(payload.size()));
    std::vector<unsigned char> out(bound);
    zs.next_in = const_cast<unsigned char*>(payload.data());
    zs.avail_in = static_cast<uInt>(payload.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());

    const int rc = deflate(&zs, Z_FINISH);
    const uLong compressed = zs.total_out;
    deflateEnd(&zs);
    if (rc != Z_STREAM_END)
        throw io_error("compression_ratio: deflate failed");

    return static_cast<double>(compressed) / static_cast<double>(payload.size());
}

} // namespace hexlab
