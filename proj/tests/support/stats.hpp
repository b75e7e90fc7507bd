#pragma once

// Small statistics helpers for the test suites: regularized incomplete gamma
// (series + Lentz continued fraction) for chi-square p-values, and a
// goodness-of-fit harness with low-expectation bin merging.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hombeat::test {

inline double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_contfrac(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Regularized upper incomplete gamma Q(a, x).
inline double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

// Survival function of the chi-square distribution with df degrees of freedom.
inline double chi_square_pvalue(double chi2, double df) {
    return gamma_q(0.5 * df, 0.5 * chi2);
}

struct GofResult {
    double chi2 = 0.0;
    long merged_cells = 0;
    double df = 0.0;
    double p_value = 1.0;
};

// Pearson chi-square with adjacent cells merged until every expected count
// reaches min_expected. No parameters are fitted, so df = cells - 1.
inline GofResult chi_square_gof(const std::vector<double>& expected,
                                const std::vector<long>& observed,
                                double min_expected = 5.0) {
    if (expected.size() != observed.size() || expected.empty())
        throw std::invalid_argument("chi_square_gof: size mismatch");
    std::vector<double> exp_merged;
    std::vector<double> obs_merged;
    double e_acc = 0.0, o_acc = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        e_acc += expected[i];
        o_acc += static_cast<double>(observed[i]);
        if (e_acc >= min_expected) {
            exp_merged.push_back(e_acc);
            obs_merged.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (exp_merged.empty()) {
            exp_merged.push_back(e_acc);
            obs_merged.push_back(o_acc);
        } else {
            exp_merged.back() += e_acc;
            obs_merged.back() += o_acc;
        }
    }
    GofResult r;
    r.merged_cells = static_cast<long>(exp_merged.size());
    for (std::size_t i = 0; i < exp_merged.size(); ++i) {
        const double d = obs_merged[i] - exp_merged[i];
        r.chi2 += d * d / exp_merged[i];
    }
    r.df = static_cast<double>(r.merged_cells - 1);
    r.p_value = r.df > 0 ? chi_square_pvalue(r.chi2, r.df) : 1.0;
    return r;
}

}  // namespace hombeat::test
