#include "ccdiv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ccdiv::stats {

double mean(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("mean of an empty range");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

static double sum_sq_dev(std::span<const double> v, double m) {
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s;
}

double population_std(std::span<const double> v) {
    const double m = mean(v);
    return std::sqrt(sum_sq_dev(v, m) / static_cast<double>(v.size()));
}

double sample_std(std::span<const double> v) {
    if (v.size() < 2) throw std::invalid_argument("sample_std needs at least two values");
    const double m = mean(v);
    return std::sqrt(sum_sq_dev(v, m) / static_cast<double>(v.size() - 1));
}

// Median of the sorted subrange [lo, hi).
static double median_of(const std::vector<double>& s, std::size_t lo, std::size_t hi) {
    const std::size_t len = hi - lo;
    const std::size_t mid = lo + len / 2;
    if (len % 2 == 1) return s[mid];
    return (s[mid - 1] + s[mid]) / 2.0;
}

FiveNumberSummary five_number_summary(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("five_number_summary of an empty range");
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    FiveNumberSummary out;
    out.min = s.front();
    out.max = s.back();
    out.median = median_of(s, 0, n);
    // Inclusive halves: for odd n the median element belongs to both.
    out.q1 = median_of(s, 0, (n + 1) / 2);
    out.q3 = median_of(s, n / 2, n);
    return out;
}

}  // namespace ccdiv::stats
