#include "actlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace actlab {

SampleSummary summarize_samples(std::span<const double> values) {
    SampleSummary s;
    s.n = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    s.min = values.front();
    s.max = values.front();
    for (double v : values) {
        sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    return s;
}

namespace {

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front = std::exp(a * std::log(x) + b * std::log(1.0 - x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - std::exp(b * std::log(1.0 - x) + a * std::log(x) - log_beta(b, a)) *
                     beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, double degrees_of_freedom) {
    if (degrees_of_freedom <= 0.0 || std::isnan(t)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    const double x = degrees_of_freedom / (degrees_of_freedom + t * t);
    const double tail = 0.5 * incomplete_beta(degrees_of_freedom / 2.0, 0.5, x);
    return t >= 0.0 ? tail : 1.0 - tail;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("welch_t_test: both samples need n >= 2");
    }
    const auto sa = summarize_samples(a);
    const auto sb = summarize_samples(b);
    const double va = sa.stddev * sa.stddev;
    const double vb = sb.stddev * sb.stddev;
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());

    WelchResult result;
    result.mean_difference = sa.mean - sb.mean;

    const double se2 = va / na + vb / nb;
    if (se2 == 0.0) {
        result.statistic = 0.0;
        result.degrees_of_freedom = na + nb - 2.0;
        result.p_value = result.mean_difference == 0.0 ? 1.0 : 0.0;
        if (result.mean_difference != 0.0) {
            result.statistic = result.mean_difference > 0
                                   ? std::numeric_limits<double>::infinity()
                                   : -std::numeric_limits<double>::infinity();
        }
        return result;
    }

    result.statistic = result.mean_difference / std::sqrt(se2);
    result.degrees_of_freedom =
        se2 * se2 /
        ((va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0));
    result.p_value = 2.0 * student_t_sf(std::fabs(result.statistic), result.degrees_of_freedom);
    result.p_value = std::clamp(result.p_value, 0.0, 1.0);
    return result;
}

double chi_square_statistic(std::span<const double> observed, std::span<const double> expected) {
    if (observed.size() != expected.size()) {
        throw std::invalid_argument("chi_square_statistic: size mismatch");
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) {
            throw std::invalid_argument("chi_square_statistic: nonpositive expected count");
        }
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    return stat;
}

double two_sample_chi_square(std::span<const std::uint64_t> histogram_a,
                             std::span<const std::uint64_t> histogram_b, std::size_t& df_out) {
    if (histogram_a.size() != histogram_b.size()) {
        throw std::invalid_argument("two_sample_chi_square: size mismatch");
    }
    double total_a = 0.0, total_b = 0.0;
    for (std::size_t i = 0; i < histogram_a.size(); ++i) {
        total_a += static_cast<double>(histogram_a[i]);
        total_b += static_cast<double>(histogram_b[i]);
    }
    if (total_a == 0.0 || total_b == 0.0) {
        throw std::invalid_argument("two_sample_chi_square: empty histogram");
    }
    // Standard homogeneity statistic: sum over bins of
    // (sqrt(Nb/Na)*Oa - sqrt(Na/Nb)*Ob)^2 / (Oa + Ob).
    const double ka = std::sqrt(total_b / total_a);
    const double kb = std::sqrt(total_a / total_b);
    double stat = 0.0;
    std::size_t bins = 0;
    for (std::size_t i = 0; i < histogram_a.size(); ++i) {
        const double oa = static_cast<double>(histogram_a[i]);
        const double ob = static_cast<double>(histogram_b[i]);
        if (oa + ob == 0.0) continue;
        ++bins;
        const double d = ka * oa - kb * ob;
        stat += d * d / (oa + ob);
    }
    df_out = bins > 0 ? bins - 1 : 0;
    return stat;
}

} // namespace actlab
