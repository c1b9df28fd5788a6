#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace latbench {

/// Summary statistics of one duration sample. stddev uses the n-1
/// denominator; stderr_ = stddev / sqrt(n).
struct SampleStats {
    std::size_t n = 0;
    double mean = 0.0;    // ns
    double stddev = 0.0;  // ns
    double stderr_ = 0.0; // ns
};

struct Interval {
    double lb = 0.0;
    double hb = 0.0;

    double width() const { return hb - lb; }
};

/// Mean and standard error of a sample (n >= 2). Single pass (Welford);
/// the test suite cross-checks against a two-pass evaluation.
SampleStats sample_stats(std::span<const double> durations);
SampleStats sample_stats(std::span<const std::int64_t> durations);

/// [mean - 2*stddev, mean + 2*stddev]: the membership band for individual
/// iteration durations.
Interval two_sigma_band(const SampleStats& s);

/// Two-sided interval for the difference of means a - b,
/// (a.mean - b.mean) +/- 2*sqrt(a.stderr^2 + b.stderr^2).
Interval diff_confidence_interval(const SampleStats& a, const SampleStats& b);

/// True iff the interval lies strictly on one side of zero. An interval
/// touching zero counts as containing it.
bool excludes_zero(const Interval& i);

/// stderr / |mean|. Throws InsufficientSamples (n < 2) or ZeroMean.
double relative_standard_error(std::span<const double> values);
double relative_standard_error(std::span<const std::int64_t> values);

/// Q(hi) - Q(lo) with the linear-interpolation quantile estimator over
/// order statistics. Requires 0 <= lo < hi <= 1 and n >= 2.
double quantile_range(std::span<const double> values, double lo, double hi);

/// Linear-interpolation quantile of a sorted sample.
double quantile_sorted(std::span<const double> sorted, double p);

std::vector<double> to_doubles(std::span<const std::int64_t> values);

}  // namespace latbench
