#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace actlab {

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double stddev = 0.0; // (n-1)-denominator; 0 when n < 2
    double min = 0.0;
    double max = 0.0;
};

SampleSummary summarize_samples(std::span<const double> values);

struct WelchResult {
    double statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double p_value = 1.0;
    double mean_difference = 0.0; // mean(a) - mean(b)
};

// Welch's two-sample t-test (unequal variances, Welch-Satterthwaite degrees
// of freedom). Both samples need n >= 2. When both variances vanish the
// p-value is 1 for equal means and 0 otherwise, by convention.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

// Upper tail P(T > t) of Student's t distribution, via the regularized
// incomplete beta function.
double student_t_sf(double t, double degrees_of_freedom);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// Pearson chi-square statistic over observed counts against expected counts.
double chi_square_statistic(std::span<const double> observed, std::span<const double> expected);

// Two-sample homogeneity chi-square over two histograms with equal binning.
// Bins where both histograms are empty are skipped; degrees of freedom are
// (non-empty bins - 1), returned through df_out.
double two_sample_chi_square(std::span<const std::uint64_t> histogram_a,
                             std::span<const std::uint64_t> histogram_b, std::size_t& df_out);

} // namespace actlab
