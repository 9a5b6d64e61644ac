#include "ccdiv/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "ccdiv/errors.hpp"
#include "ccdiv/rng.hpp"
#include "ccdiv/stats.hpp"
#include "io_util.hpp"

namespace ccdiv {

using nlohmann::json;

bool is_mean_feature(FeatureKind kind) {
    return kind == FeatureKind::kCostMean || kind == FeatureKind::kVarianceMean;
}

CostVector vector_for(FeatureKind kind) {
    return (kind == FeatureKind::kCostMean || kind == FeatureKind::kCostStd)
               ? CostVector::kExpectedCosts
               : CostVector::kVariances;
}

const char* to_string(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::kCostMean: return "ft1";
        case FeatureKind::kVarianceMean: return "ft2";
        case FeatureKind::kCostStd: return "ft3";
        case FeatureKind::kVarianceStd: return "ft4";
    }
    throw std::invalid_argument("bad FeatureKind");
}

FeatureKind feature_kind_from_string(const std::string& s) {
    if (s == "ft1") return FeatureKind::kCostMean;
    if (s == "ft2") return FeatureKind::kVarianceMean;
    if (s == "ft3") return FeatureKind::kCostStd;
    if (s == "ft4") return FeatureKind::kVarianceStd;
    throw UsageError("unknown feature \"" + s + "\" (expected ft1, ft2, ft3, or ft4)");
}

void ChanceInstance::validate() const {
    if (!graph) throw ValidationError("instance has no graph");
    const auto n = static_cast<std::size_t>(graph->node_count);
    if (mu.size() != n)
        throw ValidationError("mu length " + std::to_string(mu.size()) + " != node count " +
                              std::to_string(n));
    if (var.size() != n)
        throw ValidationError("var length " + std::to_string(var.size()) + " != node count " +
                              std::to_string(n));
    if (!(mu_max > 0.0)) throw ValidationError("mu_max must be positive");
    if (!(budget > 0.0)) throw ValidationError("budget must be positive");
    if (!(alpha > 0.0 && alpha <= 0.5)) throw ValidationError("alpha must be in (0, 0.5]");
    const double vcap = variance_ceiling(mu_max);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(mu[i] >= 0.0 && mu[i] <= mu_max))
            throw ValidationError("mu[" + std::to_string(i) + "] = " +
                                  detail::format_double(mu[i]) + " outside [0, mu_max]");
        if (!(var[i] >= 0.0 && var[i] <= vcap))
            throw ValidationError("var[" + std::to_string(i) + "] = " +
                                  detail::format_double(var[i]) + " outside [0, mu_max^2/3]");
    }
}

double surrogate_value(const ChanceInstance& inst, const Solution& x) {
    if (!inst.graph) throw ValidationError("instance has no graph");
    if (x.size() != inst.node_count())
        throw std::invalid_argument("surrogate_value: solution length " +
                                    std::to_string(x.size()) + " != node count " +
                                    std::to_string(inst.node_count()));
    double mu_sum = 0.0, var_sum = 0.0;
    for (std::size_t i = 0; i < x.bits.size(); ++i) {
        if (x.bits[i]) {
            mu_sum += inst.mu[i];
            var_sum += inst.var[i];
        }
    }
    return mu_sum + std::sqrt(var_sum * (1.0 - inst.alpha) / inst.alpha);
}

bool is_feasible(const ChanceInstance& inst, const Solution& x) {
    return surrogate_value(inst, x) <= inst.budget;
}

double feature(const ChanceInstance& inst, FeatureKind kind) {
    switch (kind) {
        case FeatureKind::kCostMean: return stats::mean(inst.mu);
        case FeatureKind::kVarianceMean: return stats::mean(inst.var);
        case FeatureKind::kCostStd: return stats::population_std(inst.mu);
        case FeatureKind::kVarianceStd: return stats::population_std(inst.var);
    }
    throw std::invalid_argument("bad FeatureKind");
}

ChanceInstance sample_initial_instance(std::shared_ptr<const CoverageGraph> graph,
                                       std::uint64_t seed, double mu_max, double alpha) {
    if (!graph) throw std::invalid_argument("sample_initial_instance: null graph");
    if (!(mu_max > 0.0)) throw std::invalid_argument("sample_initial_instance: mu_max must be positive");
    ChanceInstance inst;
    inst.graph = std::move(graph);
    inst.alpha = alpha;
    inst.mu_max = mu_max;
    const auto n = static_cast<std::size_t>(inst.graph->node_count);
    auto eng = rng::make_engine(seed);
    inst.mu.resize(n);
    inst.var.resize(n);
    // 1 - uniform01 keeps both draws strictly positive.
    for (std::size_t i = 0; i < n; ++i) inst.mu[i] = mu_max * (1.0 - rng::uniform01(eng));
    for (std::size_t i = 0; i < n; ++i)
        inst.var[i] = inst.mu[i] * inst.mu[i] / 3.0 * (1.0 - rng::uniform01(eng));
    inst.budget = static_cast<double>(inst.graph->node_count) / 30.0 * (mu_max / 2.0);
    inst.validate();
    return inst;
}

std::string to_json(const ChanceInstance& inst, const std::string& graph_ref) {
    inst.validate();
    json doc;
    doc["alpha"] = inst.alpha;
    doc["budget"] = inst.budget;
    if (graph_ref.empty())
        doc["graph"] = json::parse(to_json(*inst.graph));
    else
        doc["graph"] = graph_ref;
    doc["mu"] = inst.mu;
    doc["mu_max"] = inst.mu_max;
    doc["var"] = inst.var;
    return doc.dump(2) + "\n";
}

static std::shared_ptr<const CoverageGraph> load_graph_file(const std::filesystem::path& path) {
    if (path.extension() == ".mtx")
        return std::make_shared<CoverageGraph>(load_matrix_market(detail::read_text_file(path)));
    return std::make_shared<CoverageGraph>(graph_from_json(detail::read_text_file(path)));
}

ChanceInstance instance_from_json(const std::string& text, const std::filesystem::path& base_dir,
                                  std::shared_ptr<const CoverageGraph> preloaded_graph) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance document: expected an object");
    for (const char* key : {"graph", "mu", "var", "budget", "alpha", "mu_max"})
        if (!doc.contains(key))
            throw ParseError(std::string("instance document: missing \"") + key + "\"");

    ChanceInstance inst;
    const auto& g = doc["graph"];
    if (g.is_string()) {
        if (preloaded_graph)
            inst.graph = std::move(preloaded_graph);
        else
            inst.graph = load_graph_file(base_dir / g.get<std::string>());
    } else if (g.is_object()) {
        inst.graph = std::make_shared<CoverageGraph>(graph_from_json(g.dump()));
    } else {
        throw ParseError("instance document: \"graph\" must be a document or a file reference");
    }

    try {
        inst.mu = doc["mu"].get<std::vector<double>>();
        inst.var = doc["var"].get<std::vector<double>>();
        inst.budget = doc["budget"].get<double>();
        inst.alpha = doc["alpha"].get<double>();
        inst.mu_max = doc["mu_max"].get<double>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance document: ") + e.what());
    }
    inst.validate();
    return inst;
}

}  // namespace ccdiv
