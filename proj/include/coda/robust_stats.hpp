#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace coda::stats {

struct DescriptiveStats {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  ///< sample standard deviation (n - 1 denominator)
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

/**
 * Tukey box: quartiles by type-7 interpolation, inner fences at 1.5 IQR and
 * outer fences at 3 IQR beyond the box. Points strictly beyond a fence are
 * flagged. Whiskers end at the most extreme data inside the inner fences.
 */
struct BoxSummary {
    std::size_t n = 0;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double iqr = 0.0;
    double inner_lower = 0.0;
    double inner_upper = 0.0;
    double outer_lower = 0.0;
    double outer_upper = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<double> outliers;          ///< ascending
    std::vector<double> extreme_outliers;  ///< ascending, subset of outliers
};

/// Equal-variance two-sample comparison of group a against group b.
struct GroupComparison {
    double t_value = 0.0;
    std::size_t df = 0;
    double p_value = 1.0;  ///< two-sided
    double r_squared = 0.0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
};

double mean(std::span<const double> data);

/// Throws StatsError(TooFewObservations) for n < 2.
double sample_sd(std::span<const double> data);

/// Sorted-data quantile with linear interpolation at h = (n - 1) q.
/// quantile_type7(-x, q) == -quantile_type7(x, 1 - q) holds bit-exactly
/// whenever (n - 1) q is exact.
double quantile_type7(std::span<const double> data, double q);

/// Adjusted Fisher-Pearson G1. Needs n >= 3 and non-constant data.
double skewness(std::span<const double> data);

/// Sample excess kurtosis G2. Needs n >= 4 and non-constant data.
double excess_kurtosis(std::span<const double> data);

/// All moments at once; throws if any of them is undefined.
DescriptiveStats describe(std::span<const double> data);

BoxSummary box_summary(std::span<const double> data);

/// Pooled-variance t-test. Positive t means mean(a) > mean(b).
/// r_squared = t^2 / (t^2 + df).
GroupComparison two_sample_t_equal_var(std::span<const double> a, std::span<const double> b);

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double x, double a, double b);

/// 2 (1 - F(|t|)) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, std::size_t df);

/**
 * R^2 of the least-squares fit of `values` on an intercept and a 0/1 dummy.
 * `groups` must hold exactly two distinct labels.
 */
double dummy_regression_r2(std::span<const double> values, std::span<const std::string> groups);

}  // namespace coda::stats
