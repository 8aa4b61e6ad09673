// hexlab: sequence statistics for hexagram orderings and the training
// artifacts derived from them (LR modulation schedules, curriculum maps,
// difficulty scores, seed-sweep verdicts).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexlab/errors.hpp"
#include "hexlab/hexagram.hpp"
#include "hexlab/metrics.hpp"
#include "hexlab/permtest.hpp"
#include "hexlab/report.hpp"
#include "hexlab/schedules.hpp"
#include "hexlab/seedsweep.hpp"
#include "hexlab/stattests.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitUndefinedStatistic = 4;

std::string format_sig9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw hexlab::io_error("cannot open for writing: " + out_path);
    f << content;
    if (!f) throw hexlab::io_error("write failed: " + out_path);
}

std::vector<double> read_values_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw hexlab::io_error("cannot open: " + path);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            std::size_t pos = 0;
            const double v = std::stod(line, &pos);
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\r')) ++pos;
            if (pos != line.size()) throw std::invalid_argument("trailing text");
            values.push_back(v);
        } catch (const std::exception&) {
            throw hexlab::validation_error(path + ":" + std::to_string(lineno) +
                                           ": not a number: '" + line + "'");
        }
    }
    return values;
}

std::vector<unsigned char> read_binary_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw hexlab::io_error("cannot open: " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                     std::istreambuf_iterator<char>());
    return bytes;
}

hexlab::ShaoYongConvention parse_convention(const std::string& s) {
    if (s == "reversed") return hexlab::ShaoYongConvention::Reversed;
    if (s == "direct") return hexlab::ShaoYongConvention::Direct;
    throw hexlab::validation_error("unknown convention: " + s);
}

// --- hexagrams dump ---------------------------------------------------------

int run_dump(const std::string& ordering, const std::string& convention,
             const std::string& format, const std::string& out) {
    const auto o = hexlab::resolve_ordering(ordering, parse_convention(convention));
    std::ostringstream s;
    if (format == "csv") {
        s << "position,code,lines,yang_count\n";
        for (int p = 1; p <= 64; ++p) {
            const auto h = o.at(p);
            s << p << ',' << int(h.code) << ',' << hexlab::lines_string(h) << ','
              << h.yang_count() << '\n';
        }
    } else {
        json rows = json::array();
        for (int p = 1; p <= 64; ++p) {
            const auto h = o.at(p);
            rows.push_back({{"position", p}, {"code", h.code},
                            {"lines", hexlab::lines_string(h)},
                            {"yang_count", h.yang_count()}});
        }
        s << json({{"ordering", o.name}, {"hexagrams", rows}}).dump(2) << '\n';
    }
    write_output(out, s.str());
    return kExitOk;
}

// --- surprise profile -------------------------------------------------------

int run_profile(const std::string& ordering, const std::string& convention,
                const hexlab::SurpriseModel& model, const std::string& format,
                const std::string& out) {
    model.validate();
    const auto o = hexlab::resolve_ordering(ordering, parse_convention(convention));
    const auto profile = hexlab::surprise_profile(model, o);
    std::ostringstream s;
    if (format == "csv") {
        s << "index,from_code,to_code,hamming,surprise\n";
        for (int i = 1; i <= 63; ++i) {
            const auto a = o.at(i), b = o.at(i + 1);
            s << i << ',' << int(a.code) << ',' << int(b.code) << ','
              << hexlab::hamming(a, b) << ','
              << format_sig9(profile.values[static_cast<std::size_t>(i - 1)]) << '\n';
        }
    } else {
        const auto summary = hexlab::profile_summary(profile.values);
        s << json({{"ordering", o.name}, {"values", profile.values},
                   {"summary", hexlab::summary_json(summary)},
                   {"model", hexlab::model_json(model)}})
                 .dump(2)
          << '\n';
    }
    write_output(out, s.str());
    return kExitOk;
}

// --- analyze ordering -------------------------------------------------------

int run_analyze(const hexlab::AnalysisConfig& config, const std::string& format,
                const std::string& out) {
    const json report = hexlab::run_full_analysis(config);
    std::ostringstream s;
    if (format == "csv") {
        // Summary table only: one row per ordering, Table-style columns.
        s << "ordering,mean,std,variance,min,max\n";
        for (const auto& row : report["surprise_summaries"]) {
            s << row["ordering"].get<std::string>() << ','
              << format_sig9(row["mean"].get<double>()) << ','
              << format_sig9(row["std"].get<double>()) << ','
              << format_sig9(row["variance"].get<double>()) << ','
              << format_sig9(row["min"].get<double>()) << ','
              << format_sig9(row["max"].get<double>()) << '\n';
        }
    } else {
        s << report.dump(2) << '\n';
    }
    write_output(out, s.str());
    return kExitOk;
}

// --- compare ----------------------------------------------------------------

int run_compare(const std::string& orderings_csv, std::size_t random_n,
                const std::string& tests_csv, const std::string& series,
                const std::string& series_file, std::size_t lags, std::uint64_t seed,
                const std::string& convention, const std::string& out) {
    std::vector<std::string> names;
    std::stringstream ss(orderings_csv);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) names.push_back(item);
    if (names.empty()) throw hexlab::validation_error("no orderings given");
    if (random_n < 1) throw hexlab::validation_error("--random-baseline must be >= 1");

    bool run_ks = false, run_levene = false, run_lb = false;
    std::stringstream ts(tests_csv);
    for (std::string item; std::getline(ts, item, ',');) {
        if (item == "ks") run_ks = true;
        else if (item == "levene") run_levene = true;
        else if (item == "ljungbox") run_lb = true;
        else if (!item.empty())
            throw hexlab::validation_error("unknown test: " + item);
    }

    const auto kind = series == "hamming" ? hexlab::SeriesKind::Hamming
                                          : hexlab::SeriesKind::Surprise;
    hexlab::SurpriseModel model;
    const auto conv = parse_convention(convention);
    const auto rb = hexlab::random_baseline(model, random_n, seed, kind);

    json result;
    result["schema_version"] = hexlab::kSchemaVersion;
    result["tool_version"] = std::string(hexlab::kToolVersion);
    result["orderings"] = names;
    result["series"] = series;
    result["tests"] = hexlab::comparison_matrix(model, names, rb, conv, kind, run_ks,
                                                run_levene, run_lb, lags);
    result["seeds"] = {{"master_seed", seed}};

    if (!series_file.empty()) {
        const auto values = read_values_file(series_file);
        auto row = hexlab::to_json(hexlab::ljung_box(values, lags));
        row["source"] = series_file;
        result["series_file_ljung_box"] = std::move(row);
    }

    write_output(out, result.dump(2) + "\n");
    return kExitOk;
}

// --- schedule lr ------------------------------------------------------------

int run_schedule_lr(const std::string& profile_name, double amplitude, std::size_t steps,
                    std::uint64_t seed, const std::string& convention, const std::string& out) {
    hexlab::SurpriseModel model;
    hexlab::ModulationSchedule schedule;
    schedule.amplitude = amplitude;
    schedule.length = steps;
    schedule.source = profile_name;
    if (profile_name == "kingwen") {
        schedule.profile = hexlab::kingwen_profile(model);
    } else if (profile_name == "shaoyong") {
        schedule.profile = hexlab::shaoyong_profile(model, parse_convention(convention));
    } else if (profile_name == "random") {
        schedule.profile = hexlab::random_profile(seed);
        schedule.source = "random(" + std::to_string(seed) + ")";
    } else {
        throw hexlab::validation_error("unknown profile: " + profile_name);
    }
    if (amplitude >= 1.0)
        std::cerr << "warning: amplitude " << amplitude
                  << " >= 1 can drive multipliers to zero or below\n";

    const auto multipliers = hexlab::lr_multipliers(schedule, steps);
    std::ostringstream s;
    for (double m : multipliers) s << format_sig9(m) << '\n';
    write_output(out, s.str());
    return kExitOk;
}

// --- curriculum map ---------------------------------------------------------

hexlab::CurriculumStrategy parse_strategy(const std::string& s) {
    if (s == "sequential") return hexlab::CurriculumStrategy::Sequential;
    if (s == "random") return hexlab::CurriculumStrategy::Random;
    if (s == "easy_to_hard") return hexlab::CurriculumStrategy::EasyToHard;
    if (s == "hard_to_easy") return hexlab::CurriculumStrategy::HardToEasy;
    if (s == "kingwen") return hexlab::CurriculumStrategy::KingWen;
    throw hexlab::validation_error("unknown strategy: " + s);
}

int run_curriculum_map(const std::string& scores_path, const std::string& strategy,
                       std::uint64_t seed, const std::string& out) {
    const auto scores = read_values_file(scores_path);
    if (scores.size() != 64)
        throw hexlab::validation_error("scores file must hold exactly 64 values, got " +
                                       std::to_string(scores.size()));
    const auto mapping =
        hexlab::curriculum_map(scores, parse_strategy(strategy), seed, hexlab::SurpriseModel{});
    std::ostringstream s;
    for (int i = 0; i < 64; ++i)
        s << i << ',' << mapping.emit_position[static_cast<std::size_t>(i)] << '\n';
    write_output(out, s.str());
    return kExitOk;
}

// --- difficulty -------------------------------------------------------------

int run_difficulty(const std::string& metric, const std::string& input,
                   const std::string& format, const std::string& out) {
    const auto bytes = read_binary_file(input);
    double value;
    if (metric == "diversity") {
        if (bytes.empty() || bytes.size() % 4 != 0)
            throw hexlab::validation_error(
                "diversity input must be a non-empty sequence of little-endian u32 tokens");
        std::vector<std::uint32_t> tokens(bytes.size() / 4);
        for (std::size_t i = 0; i < tokens.size(); ++i)
            tokens[i] = static_cast<std::uint32_t>(bytes[4 * i]) |
                        (static_cast<std::uint32_t>(bytes[4 * i + 1]) << 8) |
                        (static_cast<std::uint32_t>(bytes[4 * i + 2]) << 16) |
                        (static_cast<std::uint32_t>(bytes[4 * i + 3]) << 24);
        value = hexlab::token_diversity(tokens);
    } else if (metric == "compression") {
        value = hexlab::compression_ratio(bytes);
    } else {
        throw hexlab::validation_error("unknown metric: " + metric);
    }

    std::ostringstream s;
    if (format == "csv")
        s << "metric,value\n" << metric << ',' << format_sig9(value) << '\n';
    else
        s << json({{"metric", metric}, {"value", value}, {"input", input}}).dump(2) << '\n';
    write_output(out, s.str());
    return kExitOk;
}

// --- seeds analyze ----------------------------------------------------------

int run_seeds_analyze(const std::string& input, double candidate, const std::string& out) {
    const auto values = read_values_file(input);
    const auto sweep = hexlab::summarize(values);
    const auto verdict = hexlab::classify_effect(candidate, sweep);
    const json j = {{"schema_version", hexlab::kSchemaVersion},
                    {"candidate", verdict.candidate},
                    {"delta_vs_mean", verdict.delta_vs_mean},
                    {"classification", hexlab::noise_class_name(verdict.classification)},
                    {"sweep",
                     {{"n", sweep.n}, {"mean", sweep.mean}, {"std", sweep.std_dev},
                      {"min", sweep.min}, {"max", sweep.max}, {"range", sweep.range},
                      {"cv", sweep.cv}}}};
    write_output(out, j.dump(2) + "\n");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sequence statistics for hexagram orderings"};
    app.require_subcommand(1);

    std::string ordering = "kingwen", convention = "reversed", format = "json", out;
    std::uint64_t seed = 42;
    unsigned threads = 1;

    // hexagrams dump
    auto* hexagrams = app.add_subcommand("hexagrams", "hexagram space utilities");
    hexagrams->require_subcommand(1);
    auto* dump = hexagrams->add_subcommand("dump", "emit one ordering as a table");
    dump->add_option("--ordering", ordering, "kingwen|shaoyong|binary");
    dump->add_option("--convention", convention, "shaoyong convention: reversed|direct");
    dump->add_option("--format", format, "json|csv");
    dump->add_option("--out", out, "output path (default stdout)");

    // surprise profile
    double change_up = 0.3, nuclear_weight = 0.4;
    std::string model_name = "default";
    auto* surprise = app.add_subcommand("surprise", "transition surprise");
    surprise->require_subcommand(1);
    auto* profile = surprise->add_subcommand("profile", "per-transition surprise values");
    profile->add_option("--ordering", ordering, "kingwen|shaoyong|binary");
    profile->add_option("--convention", convention, "shaoyong convention");
    profile->add_option("--model", model_name, "model preset (only: default)");
    profile->add_option("--change-up", change_up, "yin->yang line change score");
    profile->add_option("--nuclear-weight", nuclear_weight, "nuclear component weight");
    profile->add_option("--format", format, "json|csv");
    profile->add_option("--out", out, "output path");

    // analyze ordering
    std::size_t mc_samples = 100000, random_profiles = 1000;
    auto* analyze = app.add_subcommand("analyze", "Monte Carlo characterization");
    analyze->require_subcommand(1);
    auto* analyze_ordering = analyze->add_subcommand("ordering", "full analysis report");
    analyze_ordering->add_option("--name", ordering, "kingwen|shaoyong|binary");
    analyze_ordering->add_option("--convention", convention, "shaoyong convention");
    analyze_ordering->add_option("--mc-samples", mc_samples, "null permutations")
        ->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));
    analyze_ordering->add_option("--random-profiles", random_profiles,
                                 "random baseline size for the test matrix");
    analyze_ordering->add_option("--seed", seed, "master seed");
    analyze_ordering->add_option("--threads", threads, "Monte Carlo worker threads");
    analyze_ordering->add_option("--format", format, "json|csv (csv: summary table only)");
    analyze_ordering->add_option("--out", out, "output path");

    // compare
    std::string orderings_csv = "kingwen,binary,shaoyong";
    std::string tests_csv = "ks,levene,ljungbox";
    std::string series = "surprise", series_file;
    std::size_t random_baseline = 1000, lags = 5;
    auto* compare = app.add_subcommand("compare", "pairwise hypothesis-test matrix");
    compare->add_option("--orderings", orderings_csv, "comma-separated ordering names");
    compare->add_option("--random-baseline", random_baseline, "random permutations pooled");
    compare->add_option("--tests", tests_csv, "comma-separated: ks,levene,ljungbox");
    compare->add_option("--series", series, "surprise|hamming");
    compare->add_option("--series-file", series_file,
                        "run Ljung-Box on a series file (one value per line)");
    compare->add_option("--lags", lags, "Ljung-Box lag count");
    compare->add_option("--convention", convention, "shaoyong convention");
    compare->add_option("--seed", seed, "master seed");
    compare->add_option("--out", out, "output path");

    // schedule lr
    std::string lr_profile = "kingwen";
    double amplitude = 0.3;
    std::size_t steps = 5000;
    auto* schedule = app.add_subcommand("schedule", "training schedule generation");
    schedule->require_subcommand(1);
    auto* lr = schedule->add_subcommand("lr", "per-step LR multipliers");
    lr->add_option("--profile", lr_profile, "kingwen|shaoyong|random");
    lr->add_option("--amplitude", amplitude, "modulation amplitude A");
    lr->add_option("--steps", steps, "number of steps");
    lr->add_option("--seed", seed, "seed for the random profile");
    lr->add_option("--convention", convention, "shaoyong convention");
    lr->add_option("--out", out, "output path");

    // curriculum map
    std::string scores_path, strategy = "kingwen";
    auto* curriculum = app.add_subcommand("curriculum", "batch ordering strategies");
    curriculum->require_subcommand(1);
    auto* cmap = curriculum->add_subcommand("map", "buffer index -> emission position");
    cmap->add_option("--scores", scores_path, "scores.csv: 64 lines, one real each")
        ->required();
    cmap->add_option("--strategy", strategy,
                     "sequential|random|easy_to_hard|hard_to_easy|kingwen");
    cmap->add_option("--seed", seed, "seed for the random strategy");
    cmap->add_option("--out", out, "output path");

    // difficulty
    std::string metric = "diversity", input;
    auto* difficulty = app.add_subcommand("difficulty", "batch difficulty metrics");
    difficulty->add_option("--metric", metric, "diversity|compression");
    difficulty->add_option("--input", input, "u32-le tokens (diversity) or raw bytes")
        ->required();
    difficulty->add_option("--format", format, "json|csv");
    difficulty->add_option("--out", out, "output path");

    // seeds analyze
    std::string seeds_input;
    double candidate = 0.0;
    auto* seeds = app.add_subcommand("seeds", "seed-sweep noise analysis");
    seeds->require_subcommand(1);
    auto* seeds_analyze = seeds->add_subcommand("analyze", "classify a candidate value");
    seeds_analyze->add_option("--input", seeds_input, "results.csv: one value per line")
        ->required();
    seeds_analyze->add_option("--candidate", candidate, "candidate metric value")->required();
    seeds_analyze->add_option("--out", out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (dump->parsed()) return run_dump(ordering, convention, format, out);
        if (profile->parsed()) {
            if (model_name != "default")
                throw hexlab::validation_error("unknown model preset: " + model_name);
            hexlab::SurpriseModel model;
            model.change_up = change_up;
            model.nuclear_weight = nuclear_weight;
            return run_profile(ordering, convention, model, format, out);
        }
        if (analyze_ordering->parsed()) {
            hexlab::AnalysisConfig config;
            config.ordering = ordering;
            config.convention = parse_convention(convention);
            config.mc_samples = mc_samples;
            config.random_profiles = random_profiles;
            config.master_seed = seed;
            config.threads = threads == 0 ? 1 : threads;
            return run_analyze(config, format, out);
        }
        if (compare->parsed())
            return run_compare(orderings_csv, random_baseline, tests_csv, series, series_file,
                               lags, seed, convention, out);
        if (lr->parsed())
            return run_schedule_lr(lr_profile, amplitude, steps, seed, convention, out);
        if (cmap->parsed()) return run_curriculum_map(scores_path, strategy, seed, out);
        if (difficulty->parsed()) return run_difficulty(metric, input, format, out);
        if (seeds_analyze->parsed()) return run_seeds_analyze(seeds_input, candidate, out);
        std::cerr << "no subcommand given\n";
        return kExitValidation;
    } catch (const hexlab::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const hexlab::undefined_statistic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUndefinedStatistic;
    } catch (const hexlab::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
