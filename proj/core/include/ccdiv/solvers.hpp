#ifndef CCDIV_SOLVERS_HPP
#define CCDIV_SOLVERS_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "ccdiv/instance.hpp"
#include "ccdiv/solution.hpp"

namespace ccdiv {

enum class Algorithm { kEa, kFga, kGhc };

const char* to_string(Algorithm a);                  // "ea", "fga", "ghc"
Algorithm algorithm_from_string(const std::string& s);

struct SolverConfig {
    std::int64_t evaluation_budget = 10000;
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::kEa;
    double beta = 1.5;  // power-law exponent for the FGA mutation strength
};

// Constraint-aware fitness, ordered lexicographically: less violation first,
// then more coverage. A feasible solution therefore beats any infeasible one.
struct Fitness {
    double violation = 0.0;  // max(0, surrogate - budget)
    int coverage = 0;

    bool operator==(const Fitness&) const = default;
};

// Strict "a is better than b".
inline bool beats(const Fitness& a, const Fitness& b) {
    if (a.violation != b.violation) return a.violation < b.violation;
    return a.coverage > b.coverage;
}

Fitness evaluate_fitness(const ChanceInstance& inst, const Solution& x);

// Objective reported when a run never evaluates a feasible solution covering
// at least one node.
inline constexpr double kEpsilonObjective = 1e-2;

struct SolverRun {
    Solution best;           // best-ever solution under the Fitness order
    Fitness best_fitness;    // its fitness as recorded during the run
    std::int64_t evaluations = 0;
    // Best feasible coverage seen, or kEpsilonObjective if none reached
    // coverage >= 1.
    double best_objective = kEpsilonObjective;
};

// Observation hook for tests; called once per evaluation with the incumbent
// fitness after the acceptance decision.
using SolverObserver = std::function<void(const Fitness& incumbent)>;

// All three solvers start from the all-zeros solution (always feasible),
// mutate once per iteration, and accept the offspring iff it is not worse.
// They differ only in the mutation:
//   ea:  flip each bit independently with probability 1/n
//   fga: draw strength k ~ powerlaw(beta) on {1..n/2}, flip with rate k/n
//   ghc: flip exactly one uniformly chosen bit
SolverRun run_solver(const ChanceInstance& inst, const SolverConfig& cfg,
                     const SolverObserver& observer = {});

Solution run_one_plus_one_ea(const ChanceInstance& inst, const SolverConfig& cfg);
Solution run_fga(const ChanceInstance& inst, const SolverConfig& cfg);
Solution run_ghc(const ChanceInstance& inst, const SolverConfig& cfg);

double best_objective(const ChanceInstance& inst, const SolverConfig& cfg);

}  // namespace ccdiv

#endif
