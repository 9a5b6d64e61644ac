#ifndef CCDIV_DIVERSITY_HPP
#define CCDIV_DIVERSITY_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ccdiv/instance.hpp"
#include "ccdiv/perf_ratio.hpp"
#include "ccdiv/solvers.hpp"

namespace ccdiv {

// Diversity contribution of the member at index i of a feature-sorted
// population (0-based): +infinity at the two extremes, 0 for a value shared
// with any other member, else the product of the gaps to both neighbors.
double contribution(std::span<const double> sorted_features, std::size_t i);

// Population diversity: sum of the interior members' contributions.
// Requires at least 3 members.
double set_diversity(std::span<const double> sorted_features);

// Direction in which the member at index i (0-based) should move its feature
// to grow its contribution: +1 at the maximum, -1 at the minimum, and for
// interior members +1 iff the gap below is at most the gap above.
int indicator(std::span<const double> sorted_features, std::size_t i);

struct MutationParams {
    double sigma1 = 3.0;    // std of the per-node shift (mean features)
    double sigma2 = 100.0;  // std of the per-swap transfer (spread features)
    double lambda = 5.0;    // Poisson mean: swaps per mutation = min(m+1, pools)
    CostVector target = CostVector::kExpectedCosts;
};

// Shifts every node of the targeted vector by direction * |N(0, sigma1)|,
// clamped to [0, ceiling]. Moves the vector's mean feature monotonically in
// the given direction.
ChanceInstance mutate_independent(const ChanceInstance& parent, int direction,
                                  const MutationParams& params, std::uint64_t seed);

// Mean-preserving spread mutation: partitions nodes into below-or-at-average
// and above-average groups, then transfers |N(0, sigma2)| between a fresh
// pair (one from each group) K = min(Pois(lambda)+1, pool sizes) times.
// direction = +1 widens the spread, -1 narrows it. A transfer that would
// leave [0, ceiling] is resampled up to 10 times and then skipped, so the
// vector mean never moves.
ChanceInstance mutate_dependent(const ChanceInstance& parent, int direction,
                                const MutationParams& params, std::uint64_t seed);

// Parent index for one generation: the minimum w.p. 1/3, the maximum w.p.
// 1/3, else uniform over the interior. Requires mu >= 3.
std::size_t select_parent(std::size_t mu, std::uint64_t seed);

struct PopulationMember {
    ChanceInstance instance;
    double feature = 0.0;       // cached feature value
    double r_prime = 0.0;       // cached discounted performance ratio
    double contribution = 0.0;  // cached diversity contribution
};

// Feature-sorted multiset of discriminating instances with cached features,
// ratios, and contributions.
struct Population {
    std::vector<PopulationMember> members;  // ascending by feature
    FeatureKind feature_kind = FeatureKind::kCostMean;
    double threshold = 1.0;  // minimum admissible R'

    std::size_t size() const { return members.size(); }
    std::vector<double> features() const;
    double set_diversity() const;

    // Recomputes every cached contribution from the current order.
    void refresh_contributions();

    // Checks sort order, cache consistency (features and contributions equal
    // recomputation), and R' >= threshold. Throws ValidationError.
    void validate() const;
};

struct EvolveOptions {
    std::int64_t iterations = 10000;
    int runs = 10;        // r solver runs per algorithm inside each R' check
    double theta = 0.9;
    std::uint64_t seed = 0;
    int max_parallel = 1;
};

struct IterationRecord {
    std::int64_t iteration = 0;  // 1-based
    bool accepted = false;
    double child_feature = 0.0;
    double child_r_prime = 0.0;
    double set_diversity_after = 0.0;
};

// Called after each generation with the population in its post-generation
// state; used for trajectory logging and invariant auditing.
using EvolveObserver = std::function<void(const Population&, const IterationRecord&)>;

// The steady-state diversity loop: select a parent (extremes favored), mutate
// it toward its indicator direction with the operator matching the feature
// kind, and, if the child is still discriminating (R' >= threshold), insert
// it and evict a minimum-contribution member (ties uniform at random).
// params.target must match the population's feature kind.
Population evolve_diverse(Population population, const SolverConfig& alg1,
                          const SolverConfig& alg2, const MutationParams& params,
                          const EvolveOptions& opts,
                          const EvolveObserver& observer = {});

struct ConventionalParams {
    double mu_sigma = 3.0;     // std of the per-node expected-cost noise
    double var_sigma = 100.0;  // std of the per-node variance noise
    double mu_max = 1000.0;
    double alpha = 0.05;
};

struct ConventionalResult {
    ChanceInstance instance;
    double r_prime = 0.0;
};

// The baseline single-instance evolver: a (1+1) EA over instance space that
// perturbs every node's expected cost and variance with signed Gaussian
// noise and keeps the child iff its R' does not drop.
ConventionalResult evolve_conventional(std::shared_ptr<const CoverageGraph> graph,
                                       const SolverConfig& alg1, const SolverConfig& alg2,
                                       int runs, double theta, std::int64_t iterations,
                                       const ConventionalParams& params, std::uint64_t seed,
                                       int max_parallel = 1);

}  // namespace ccdiv

#endif
