#ifndef CCDIV_COMMANDS_HPP
#define CCDIV_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ccdiv/diversity.hpp"

namespace ccdiv::commands {

// Mutation step sizes keyed to the feature under evolution: sigma1 3 for the
// expected-cost mean, 100 for the variance mean; sigma2 100 for the
// expected-cost spread, 3000 for the variance spread.
MutationParams default_mutation_params(FeatureKind kind);

// On-disk population: a directory holding graph.json, one instance_*.json per
// member, and manifest.json tying them together with the evolution settings.
struct Checkpoint {
    Population population;
    Algorithm alg1 = Algorithm::kEa;
    Algorithm alg2 = Algorithm::kGhc;
    std::int64_t solver_evals = 10000;
    int runs = 10;
    double theta = 0.9;
    std::uint64_t seed = 0;
    std::int64_t iteration = 0;  // generations already applied
};

void save_checkpoint(const std::string& dir, const Checkpoint& cp);
Checkpoint load_checkpoint(const std::string& dir);

struct RandomGraphOptions {
    int nodes = 0;
    double edge_prob = 0.0;
    std::uint64_t seed = 0;
    std::string output;
};

struct GenInitialOptions {
    std::string graph;  // .mtx is read as Matrix Market, anything else as JSON
    FeatureKind feature = FeatureKind::kCostMean;
    Algorithm alg1 = Algorithm::kEa;
    Algorithm alg2 = Algorithm::kGhc;
    int mu = 20;
    std::int64_t iterations = 10000;  // baseline-evolver steps per member
    std::int64_t solver_evals = 10000;
    int runs = 10;
    double theta = 0.9;
    double alpha = 0.05;
    double mu_max = 1000.0;
    double mu_sigma = 3.0;
    double var_sigma = 100.0;
    std::uint64_t seed = 0;
    std::string output_dir;
    int max_parallel = 1;
};

struct EvolveCmdOptions {
    std::string population_dir;
    std::string output_dir;
    std::string trajectory;  // CSV path; empty skips the log
    std::int64_t iterations = 10000;
    std::uint64_t seed = 0;
    int max_parallel = 1;
    double lambda = 5.0;
    // Unset fields fall back to the checkpoint's recorded settings
    // (sigmas to the feature-keyed defaults).
    std::optional<double> sigma1, sigma2;
    std::optional<int> runs;
    std::optional<double> theta;
    std::optional<std::int64_t> solver_evals;
    std::optional<Algorithm> alg1, alg2;
};

struct RatioOptions {
    std::string instance;
    Algorithm alg1 = Algorithm::kEa;
    Algorithm alg2 = Algorithm::kGhc;
    std::int64_t solver_evals = 10000;
    int runs = 10;
    double theta = 0.9;
    std::uint64_t seed = 0;
    std::string output;  // JSON path; empty prints only
    int max_parallel = 1;
};

struct ReportOptions {
    std::vector<std::string> population_dirs;
    std::string summary_out;  // per-set feature average/std/min/max + diversity
    std::string box_out;      // per-set five-number summaries; empty skips
};

// Each command writes its data files, prints a short human summary to `out`,
// and throws (UsageError, ValidationError, GenerationFailure, ParseError) on
// failure; the CLI maps those to exit codes.
void cmd_random_graph(const RandomGraphOptions& opt, std::ostream& out);
void cmd_gen_initial(const GenInitialOptions& opt, std::ostream& out);
void cmd_evolve(const EvolveCmdOptions& opt, std::ostream& out);
void cmd_ratio(const RatioOptions& opt, std::ostream& out);
void cmd_report(const ReportOptions& opt, std::ostream& out);

}  // namespace ccdiv::commands

#endif
