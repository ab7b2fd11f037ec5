#include "coda/robust_stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "coda/error.hpp"

namespace coda::stats {

namespace {

constexpr double kBetaEps = 1e-10;
constexpr int kBetaMaxIter = 300;

void require_data(std::span<const double> data) {
    if (data.empty()) {
        throw StatsError(StatsError::Kind::EmptyData, "empty data");
    }
}

void require_n(std::span<const double> data, std::size_t n, const char* what) {
    if (data.size() < n) {
        throw StatsError(StatsError::Kind::TooFewObservations,
                         std::string(what) + " needs at least " + std::to_string(n) + " observations, got " +
                             std::to_string(data.size()));
    }
}

bool is_constant(std::span<const double> data) {
    auto [lo, hi] = std::minmax_element(data.begin(), data.end());
    return *lo == *hi;
}

struct CentralMoments {
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
};

// 1/n central moments. Constant input is rejected up front: a mean that is
// off by one ulp would otherwise leave tiny nonzero deviations.
CentralMoments central_moments(std::span<const double> data) {
    if (is_constant(data)) {
        throw StatsError(StatsError::Kind::ZeroVariance, "zero variance");
    }
    const double mu = mean(data);
    CentralMoments m;
    for (double v : data) {
        const double d = v - mu;
        const double d2 = d * d;
        m.m2 += d2;
        m.m3 += d2 * d;
        m.m4 += d2 * d2;
    }
    const auto n = static_cast<double>(data.size());
    m.m2 /= n;
    m.m3 /= n;
    m.m4 /= n;
    if (!(m.m2 > 0.0)) {
        throw StatsError(StatsError::Kind::ZeroVariance, "zero variance");
    }
    return m;
}

std::vector<double> sorted_copy(std::span<const double> data) {
    std::vector<double> s(data.begin(), data.end());
    std::sort(s.begin(), s.end());
    return s;
}

// Interpolates from whichever neighbour is closer so that mirrored data gives
// mirrored results bit for bit.
double interpolate(const std::vector<double>& sorted, double h) {
    const double floor_h = std::floor(h);
    const auto lo = static_cast<std::size_t>(floor_h);
    const double frac = h - floor_h;
    if (frac == 0.0 || lo + 1 >= sorted.size()) {
        return sorted[std::min(lo, sorted.size() - 1)];
    }
    const double a = sorted[lo];
    const double b = sorted[lo + 1];
    if (frac == 0.5) {
        return (a + b) * 0.5;
    }
    if (frac < 0.5) {
        return a + frac * (b - a);
    }
    return b - (1.0 - frac) * (b - a);
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    return interpolate(sorted, static_cast<double>(sorted.size() - 1) * q);
}

// Lanczos approximation (g = 7, n = 9); positive arguments only. Used instead
// of std::lgamma, which writes the global signgam.
double log_gamma(double x) {
    static constexpr std::array<double, 9> kCoef = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    x -= 1.0;
    double acc = kCoef[0];
    for (std::size_t i = 1; i < kCoef.size(); ++i) {
        acc += kCoef[i] / (x + static_cast<double>(i));
    }
    const double t = x + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(acc);
}

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kBetaMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kBetaEps) {
            break;
        }
    }
    return h;
}

// I_x(a, b) given both x and y = 1 - x, so callers can pass an accurate y.
double incomplete_beta(double x, double y, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double log_front =
        log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) + b * std::log(y);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(x, a, b) / a;
    }
    return 1.0 - front * beta_continued_fraction(y, b, a) / b;
}

}  // namespace

double mean(std::span<const double> data) {
    require_data(data);
    double sum = 0.0;
    for (double v : data) {
        sum += v;
    }
    return sum / static_cast<double>(data.size());
}

double sample_sd(std::span<const double> data) {
    require_n(data, 2, "standard deviation");
    if (is_constant(data)) {
        return 0.0;
    }
    const double mu = mean(data);
    double ss = 0.0;
    for (double v : data) {
        ss += (v - mu) * (v - mu);
    }
    return std::sqrt(ss / static_cast<double>(data.size() - 1));
}

double quantile_type7(std::span<const double> data, double q) {
    require_data(data);
    if (!(q >= 0.0 && q <= 1.0)) {
        throw StatsError(StatsError::Kind::InvalidProbability, "quantile probability outside [0, 1]");
    }
    return quantile_sorted(sorted_copy(data), q);
}

double skewness(std::span<const double> data) {
    require_n(data, 3, "skewness");
    const CentralMoments m = central_moments(data);
    const auto n = static_cast<double>(data.size());
    const double g1 = m.m3 / std::pow(m.m2, 1.5);
    return std::sqrt(n * (n - 1.0)) / (n - 2.0) * g1;
}

double excess_kurtosis(std::span<const double> data) {
    require_n(data, 4, "kurtosis");
    const CentralMoments m = central_moments(data);
    const auto n = static_cast<double>(data.size());
    const double g2 = m.m4 / (m.m2 * m.m2) - 3.0;
    return ((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
}

DescriptiveStats describe(std::span<const double> data) {
    DescriptiveStats s;
    s.n = data.size();
    s.mean = mean(data);
    s.sd = sample_sd(data);
    s.skewness = skewness(data);
    s.excess_kurtosis = excess_kurtosis(data);
    return s;
}

BoxSummary box_summary(std::span<const double> data) {
    require_data(data);
    const std::vector<double> sorted = sorted_copy(data);
    BoxSummary b;
    b.n = sorted.size();
    b.min = sorted.front();
    b.max = sorted.back();
    b.q1 = quantile_sorted(sorted, 0.25);
    b.median = quantile_sorted(sorted, 0.5);
    b.q3 = quantile_sorted(sorted, 0.75);
    b.iqr = b.q3 - b.q1;
    b.inner_lower = b.q1 - 1.5 * b.iqr;
    b.inner_upper = b.q3 + 1.5 * b.iqr;
    b.outer_lower = b.q1 - 3.0 * b.iqr;
    b.outer_upper = b.q3 + 3.0 * b.iqr;
    b.whisker_low = b.q1;
    b.whisker_high = b.q3;
    for (double v : sorted) {
        if (v < b.inner_lower || v > b.inner_upper) {
            b.outliers.push_back(v);
            if (v < b.outer_lower || v > b.outer_upper) {
                b.extreme_outliers.push_back(v);
            }
        } else {
            b.whisker_low = std::min(b.whisker_low, v);
            b.whisker_high = std::max(b.whisker_high, v);
        }
    }
    return b;
}

GroupComparison two_sample_t_equal_var(std::span<const double> a, std::span<const double> b) {
    require_n(a, 2, "t-test group a");
    require_n(b, 2, "t-test group b");
    GroupComparison g;
    g.n_a = a.size();
    g.n_b = b.size();
    g.mean_a = mean(a);
    g.mean_b = mean(b);
    double ss = 0.0;
    for (double v : a) ss += (v - g.mean_a) * (v - g.mean_a);
    for (double v : b) ss += (v - g.mean_b) * (v - g.mean_b);
    g.df = g.n_a + g.n_b - 2;
    const double pooled = ss / static_cast<double>(g.df);
    if (!(pooled > 0.0)) {
        throw StatsError(StatsError::Kind::ZeroPooledVariance, "zero pooled variance");
    }
    const double se = std::sqrt(pooled * (1.0 / static_cast<double>(g.n_a) + 1.0 / static_cast<double>(g.n_b)));
    g.t_value = (g.mean_a - g.mean_b) / se;
    g.p_value = student_t_two_sided_p(g.t_value, g.df);
    const double t2 = g.t_value * g.t_value;
    g.r_squared = t2 / (t2 + static_cast<double>(g.df));
    return g;
}

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
        throw StatsError(StatsError::Kind::InvalidProbability, "incomplete beta argument out of range");
    }
    return incomplete_beta(x, 1.0 - x, a, b);
}

double student_t_two_sided_p(double t, std::size_t df) {
    if (df < 1) {
        throw StatsError(StatsError::Kind::InvalidDf, "degrees of freedom must be >= 1");
    }
    if (std::isnan(t)) {
        return std::nan("");
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    const auto nu = static_cast<double>(df);
    const double t2 = t * t;
    const double x = nu / (nu + t2);
    const double y = t2 / (nu + t2);
    return std::clamp(incomplete_beta(x, y, nu / 2.0, 0.5), 0.0, 1.0);
}

double dummy_regression_r2(std::span<const double> values, std::span<const std::string> groups) {
    if (values.size() != groups.size()) {
        throw LengthMismatch(values.size(), groups.size());
    }
    require_data(values);
    const std::string& first = groups.front();
    const std::string* second = nullptr;
    for (const std::string& g : groups) {
        if (g != first) {
            if (second == nullptr) {
                second = &g;
            } else if (g != *second) {
                throw StatsError(StatsError::Kind::NotBinary, "dummy regression needs exactly two groups");
            }
        }
    }
    if (second == nullptr) {
        throw StatsError(StatsError::Kind::SingleGroup, "dummy regression needs two non-empty groups");
    }
    // Ordinary least squares of y on [1, d] through the centred normal equations.
    std::vector<double> dummy(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        dummy[i] = groups[i] == first ? 1.0 : 0.0;
    }
    const double y_bar = mean(values);
    const double d_bar = mean(dummy);
    double sxy = 0.0;
    double sxx = 0.0;
    double sst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sxy += (dummy[i] - d_bar) * (values[i] - y_bar);
        sxx += (dummy[i] - d_bar) * (dummy[i] - d_bar);
        sst += (values[i] - y_bar) * (values[i] - y_bar);
    }
    if (is_constant(values) || !(sst > 0.0)) {
        throw StatsError(StatsError::Kind::ZeroVariance, "zero variance");
    }
    const double slope = sxy / sxx;
    const double intercept = y_bar - slope * d_bar;
    double sse = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double r = values[i] - intercept - slope * dummy[i];
        sse += r * r;
    }
    return 1.0 - sse / sst;
}

}  // namespace coda::stats
