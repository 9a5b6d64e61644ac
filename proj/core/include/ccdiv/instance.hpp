#ifndef CCDIV_INSTANCE_HPP
#define CCDIV_INSTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "ccdiv/graph.hpp"
#include "ccdiv/solution.hpp"

namespace ccdiv {

// Scalar descriptors of an instance's cost model: the mean or the spread
// (population standard deviation) of the node expected costs or variances.
// The CLI and file formats name them ft1..ft4 in that order.
enum class FeatureKind {
    kCostMean,      // ft1: mean of expected costs
    kVarianceMean,  // ft2: mean of cost variances
    kCostStd,       // ft3: population std of expected costs
    kVarianceStd,   // ft4: population std of cost variances
};

// Mean features move under a uniform shift of the vector; spread features are
// evolved by mean-preserving swaps instead.
bool is_mean_feature(FeatureKind kind);

// Which cost vector a feature reads.
enum class CostVector { kExpectedCosts, kVariances };
CostVector vector_for(FeatureKind kind);

const char* to_string(FeatureKind kind);                 // "ft1".."ft4"
FeatureKind feature_kind_from_string(const std::string& s);

// Ceiling applied to every node variance; mirrors the initialization envelope
// var_i < mu_i^2/3 <= mu_max^2/3.
inline double variance_ceiling(double mu_max) { return mu_max * mu_max / 3.0; }

// One chance-constrained max-coverage instance: stochastic node costs
// (independent, mean mu[i], variance var[i]) over a shared graph, a cost
// budget, and the risk level alpha bounding the overrun probability.
// Value type: copies evolve independently while sharing the immutable graph.
struct ChanceInstance {
    std::shared_ptr<const CoverageGraph> graph;
    std::vector<double> mu;
    std::vector<double> var;
    double budget = 0.0;
    double alpha = 0.05;
    double mu_max = 1000.0;

    int node_count() const { return graph ? graph->node_count : 0; }

    // Throws ValidationError naming the offending field/index.
    void validate() const;
};

// mu(x) + sqrt(var(x) * (1-alpha)/alpha), the Chebyshev-based deterministic
// bound whose satisfaction implies the chance constraint.
double surrogate_value(const ChanceInstance& inst, const Solution& x);

bool is_feasible(const ChanceInstance& inst, const Solution& x);

double feature(const ChanceInstance& inst, FeatureKind kind);

// Fresh instance with mu[i] ~ U(0, mu_max), var[i] ~ U(0, mu[i]^2/3), and
// budget n/30 * mu_max/2.
ChanceInstance sample_initial_instance(std::shared_ptr<const CoverageGraph> graph,
                                       std::uint64_t seed, double mu_max, double alpha);

// Instance JSON: {"graph": <graph doc or file reference>, "mu": [...],
// "var": [...], "budget": b, "alpha": a, "mu_max": m}. graph_ref, when
// non-empty, is written instead of the inline graph document.
std::string to_json(const ChanceInstance& inst, const std::string& graph_ref = "");

// Parses and validates. A string "graph" field is resolved against base_dir;
// if preloaded_graph is given it is used for that reference instead of
// re-reading the file.
ChanceInstance instance_from_json(const std::string& text,
                                  const std::filesystem::path& base_dir = {},
                                  std::shared_ptr<const CoverageGraph> preloaded_graph = nullptr);

}  // namespace ccdiv

#endif
