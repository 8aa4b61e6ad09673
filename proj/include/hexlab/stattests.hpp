#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hexlab/errors.hpp"
#include "hexlab/special_functions.hpp"

namespace hexlab {

struct TestResult {
    std::string test;
    double statistic{};
    double p_value{};
    std::map<std::string, double> params;
};

// Two-sample Kolmogorov-Smirnov. D = sup |F_x - F_y|; p from the asymptotic
// Kolmogorov distribution at sqrt(n_e) * D with n_e = nm/(n+m).
inline TestResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty())
        throw validation_error("ks_two_sample: both samples must be non-empty");

    std::vector<double> a(x.begin(), x.end());
    std::vector<double> b(y.begin(), y.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }

    const double ne = na * nb / (na + nb);
    TestResult r{"ks_two_sample", d, kolmogorov_survival(std::sqrt(ne) * d), {}};
    r.params["n_x"] = na;
    r.params["n_y"] = nb;
    return r;
}

enum class Centering { Mean, Median };

// Classical Levene W on absolute deviations from the group center; p from
// F(k-1, N-k). Median centering gives the Brown-Forsythe variant.
inline TestResult levene(std::span<const std::vector<double>> groups,
                         Centering centering = Centering::Mean) {
    if (groups.size() < 2)
        throw validation_error("levene: need at least 2 groups");

    const std::size_t k = groups.size();
    std::size_t total = 0;
    std::vector<std::vector<double>> z(k);
    for (std::size_t g = 0; g < k; ++g) {
        const auto& grp = groups[g];
        if (grp.size() < 2)
            throw validation_error("levene: each group needs at least 2 values");
        total += grp.size();
        double center;
        if (centering == Centering::Mean) {
            center = 0.0;
            for (double v : grp) center += v;
            center /= static_cast<double>(grp.size());
        } else {
            std::vector<double> s(grp);
            std::sort(s.begin(), s.end());
            const std::size_t m = s.size() / 2;
            center = s.size() % 2 ? s[m] : 0.5 * (s[m - 1] + s[m]);
        }
        z[g].reserve(grp.size());
        for (double v : grp) z[g].push_back(std::abs(v - center));
    }

    std::vector<double> zbar(k, 0.0);
    double grand = 0.0;
    for (std::size_t g = 0; g < k; ++g) {
        for (double v : z[g]) zbar[g] += v;
        grand += zbar[g];
        zbar[g] /= static_cast<double>(z[g].size());
    }
    grand /= static_cast<double>(total);

    double between = 0.0, within = 0.0;
    for (std::size_t g = 0; g < k; ++g) {
        between += static_cast<double>(z[g].size()) * (zbar[g] - grand) * (zbar[g] - grand);
        for (double v : z[g]) within += (v - zbar[g]) * (v - zbar[g]);
    }

    const double df1 = static_cast<double>(k - 1);
    const double df2 = static_cast<double>(total - k);
    double w, p;
    if (within == 0.0) {
        // All deviations identical within groups: W degenerates.
        w = between == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        p = between == 0.0 ? 1.0 : 0.0;
    } else {
        w = (df2 / df1) * (between / within);
        p = 1.0 - f_cdf(w, static_cast<int>(df1), static_cast<int>(df2));
    }

    TestResult r{"levene", w, p, {}};
    r.params["groups"] = static_cast<double>(k);
    r.params["df1"] = df1;
    r.params["df2"] = df2;
    return r;
}

// Sample autocorrelations r_1..r_h with the common biased normalization.
inline std::vector<double> autocorrelations(std::span<const double> series, std::size_t lags) {
    const std::size_t n = series.size();
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double denom = 0.0;
    for (double v : series) denom += (v - mean) * (v - mean);
    if (denom == 0.0)
        throw undefined_statistic_error("autocorrelation of a constant series");
    std::vector<double> r(lags);
    for (std::size_t k = 1; k <= lags; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + k < n; ++t)
            num += (series[t] - mean) * (series[t + k] - mean);
        r[k - 1] = num / denom;
    }
    return r;
}

// Q = n(n+2) sum_k r_k^2 / (n-k); p from chi-square with `lags` dof.
inline TestResult ljung_box(std::span<const double> series, std::size_t lags) {
    if (lags < 1)
        throw validation_error("ljung_box: need at least one lag");
    if (series.size() <= lags)
        throw validation_error("ljung_box: series must be longer than the lag count");

    const auto r = autocorrelations(series, lags);
    const double n = static_cast<double>(series.size());
    double q = 0.0;
    for (std::size_t k = 1; k <= lags; ++k)
        q += r[k - 1] * r[k - 1] / (n - static_cast<double>(k));
    q *= n * (n + 2.0);

    TestResult res{"ljung_box", q, 1.0 - chi_square_cdf(q, static_cast<int>(lags)), {}};
    res.params["lags"] = static_cast<double>(lags);
    res.params["n"] = n;
    return res;
}

} // namespace hexlab
