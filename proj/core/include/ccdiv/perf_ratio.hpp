#ifndef CCDIV_PERF_RATIO_HPP
#define CCDIV_PERF_RATIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ccdiv/solvers.hpp"

namespace ccdiv {

// Paired best objectives of two solvers over r runs and the derived
// discounted performance ratio R' = mean(R) - K_theta * std(R).
struct RatioReport {
    std::vector<double> per_run_a1;
    std::vector<double> per_run_a2;
    std::vector<double> ratios;     // per_run_a1[i] / per_run_a2[i]
    double mean_ratio = 0.0;
    double std_ratio = 0.0;         // sample (r-1) standard deviation
    double discounted = 0.0;
};

// Standard normal quantile at theta, the discount factor for confidence
// level theta. Requires 0.5 < theta < 1.
double k_theta(double theta);

// Assembles a report from already-computed per-run objectives.
RatioReport compute_ratio_report(std::vector<double> per_run_a1,
                                 std::vector<double> per_run_a2, double theta);

// Runs each solver r times (seeds derived from (seed, run index, algorithm
// tag)), pairs runs by index, and discounts the mean ratio by its spread.
// max_parallel > 1 fans the 2r independent runs out over that many threads;
// results are assembled in run-index order either way.
RatioReport discounted_ratio(const ChanceInstance& inst, const SolverConfig& alg1,
                             const SolverConfig& alg2, int runs, double theta,
                             std::uint64_t seed, int max_parallel = 1);

// Acceptance threshold 0.8 * (r_prime_baseline - 1) + 1; requires a
// discriminating baseline (> 1).
double threshold_from(double r_prime_baseline);

std::string to_json(const RatioReport& report);
RatioReport ratio_report_from_json(const std::string& text);

}  // namespace ccdiv

#endif
