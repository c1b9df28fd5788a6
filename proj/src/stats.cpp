#include "latbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latbench/errors.hpp"

namespace latbench {

SampleStats sample_stats(std::span<const double> durations) {
    const std::size_t n = durations.size();
    if (n < 2) {
        throw InsufficientSamples("sample_stats requires at least 2 values");
    }
    // Welford recurrence, numerically stable for long traces.
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (double x : durations) {
        ++k;
        const double d = x - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (x - mean);
    }
    SampleStats s;
    s.n = n;
    s.mean = mean;
    s.stddev = std::sqrt(std::max(0.0, m2 / static_cast<double>(n - 1)));
    s.stderr_ = s.stddev / std::sqrt(static_cast<double>(n));
    return s;
}

SampleStats sample_stats(std::span<const std::int64_t> durations) {
    return sample_stats(std::span<const double>(to_doubles(durations)));
}

Interval two_sigma_band(const SampleStats& s) {
    return Interval{s.mean - 2.0 * s.stddev, s.mean + 2.0 * s.stddev};
}

Interval diff_confidence_interval(const SampleStats& a, const SampleStats& b) {
    const double diff = a.mean - b.mean;
    const double half = 2.0 * std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
    return Interval{diff - half, diff + half};
}

bool excludes_zero(const Interval& i) {
    return i.lb > 0.0 || i.hb < 0.0;
}

double relative_standard_error(std::span<const double> values) {
    const SampleStats s = sample_stats(values);
    if (s.mean == 0.0) {
        throw ZeroMean("relative standard error undefined for zero mean");
    }
    return s.stderr_ / std::abs(s.mean);
}

double relative_standard_error(std::span<const std::int64_t> values) {
    return relative_standard_error(std::span<const double>(to_doubles(values)));
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw InsufficientSamples("quantile of empty sample");
    }
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("quantile level outside [0,1]");
    }
    const std::size_t n = sorted.size();
    const double h = p * static_cast<double>(n - 1);
    const auto i = static_cast<std::size_t>(h);
    if (i + 1 >= n) {
        return sorted[n - 1];
    }
    const double frac = h - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

double quantile_range(std::span<const double> values, double lo, double hi) {
    if (values.size() < 2) {
        throw InsufficientSamples("quantile_range requires at least 2 values");
    }
    if (!(0.0 <= lo && lo < hi && hi <= 1.0)) {
        throw std::invalid_argument("quantile_range requires 0 <= lo < hi <= 1");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, hi) - quantile_sorted(sorted, lo);
}

std::vector<double> to_doubles(std::span<const std::int64_t> values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (std::int64_t v : values) {
        out.push_back(static_cast<double>(v));
    }
    return out;
}

}  // namespace latbench
