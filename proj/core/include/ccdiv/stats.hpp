#ifndef CCDIV_STATS_HPP
#define CCDIV_STATS_HPP

#include <span>

namespace ccdiv::stats {

double mean(std::span<const double> v);

// Standard deviation with the 1/n divisor.
double population_std(std::span<const double> v);

// Standard deviation with the 1/(n-1) divisor; requires at least two values.
double sample_std(std::span<const double> v);

struct FiveNumberSummary {
    double min, q1, median, q3, max;
};

// Quartiles by the inclusive median-of-halves method: for an odd count the
// median element belongs to both halves. Input need not be sorted.
FiveNumberSummary five_number_summary(std::span<const double> v);

}  // namespace ccdiv::stats

#endif
