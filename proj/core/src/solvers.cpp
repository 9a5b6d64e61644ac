#include "ccdiv/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ccdiv/errors.hpp"
#include "ccdiv/graph.hpp"
#include "ccdiv/rng.hpp"

namespace ccdiv {

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::kEa: return "ea";
        case Algorithm::kFga: return "fga";
        case Algorithm::kGhc: return "ghc";
    }
    throw std::invalid_argument("bad Algorithm");
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "ea") return Algorithm::kEa;
    if (s == "fga") return Algorithm::kFga;
    if (s == "ghc") return Algorithm::kGhc;
    throw UsageError("unknown algorithm \"" + s + "\" (expected ea, fga, or ghc)");
}

Fitness evaluate_fitness(const ChanceInstance& inst, const Solution& x) {
    Fitness f;
    f.violation = std::max(0.0, surrogate_value(inst, x) - inst.budget);
    f.coverage = coverage_count(*inst.graph, x);
    return f;
}

namespace {

// Allocation-free fitness evaluation for the solver inner loop; the stamp
// array replaces a cleared visited vector.
struct Evaluator {
    const ChanceInstance& inst;
    std::vector<int> mark;
    int stamp = 0;

    explicit Evaluator(const ChanceInstance& i)
        : inst(i), mark(static_cast<std::size_t>(i.node_count()), 0) {}

    Fitness operator()(const Solution& x) {
        ++stamp;
        const CoverageGraph& g = *inst.graph;
        int count = 0;
        double mu_sum = 0.0, var_sum = 0.0;
        for (std::size_t i = 0; i < x.bits.size(); ++i) {
            if (!x.bits[i]) continue;
            mu_sum += inst.mu[i];
            var_sum += inst.var[i];
            if (mark[i] != stamp) {
                mark[i] = stamp;
                ++count;
            }
            for (int j : g.adjacency[i]) {
                if (mark[static_cast<std::size_t>(j)] != stamp) {
                    mark[static_cast<std::size_t>(j)] = stamp;
                    ++count;
                }
            }
        }
        Fitness f;
        f.violation = std::max(
            0.0, mu_sum + std::sqrt(var_sum * (1.0 - inst.alpha) / inst.alpha) - inst.budget);
        f.coverage = count;
        return f;
    }
};

// Flips each bit independently with probability p, jumping between flipped
// positions geometrically instead of rolling per bit.
void flip_with_rate(Solution& s, double p, std::mt19937_64& eng) {
    const int n = s.size();
    if (p <= 0.0) return;
    if (p >= 1.0) {
        for (auto& b : s.bits) b ^= 1;
        return;
    }
    const double logq = std::log1p(-p);
    int i = 0;
    while (i < n) {
        const double u = 1.0 - rng::uniform01(eng);  // (0, 1]
        const double skip = std::floor(std::log(u) / logq);
        if (skip >= static_cast<double>(n - i)) return;
        i += static_cast<int>(skip);
        s.bits[static_cast<std::size_t>(i)] ^= 1;
        ++i;
    }
}

}  // namespace

SolverRun run_solver(const ChanceInstance& inst, const SolverConfig& cfg,
                     const SolverObserver& observer) {
    inst.validate();
    if (cfg.evaluation_budget < 1)
        throw std::invalid_argument("evaluation_budget must be at least 1");
    if (cfg.algorithm == Algorithm::kFga && !(cfg.beta > 1.0))
        throw std::invalid_argument("beta must exceed 1");

    const int n = inst.node_count();
    auto eng = rng::make_engine(cfg.seed);
    Evaluator eval(inst);

    // Cumulative (unnormalized) power-law weights over strengths 1..n/2.
    std::vector<double> strength_cum;
    if (cfg.algorithm == Algorithm::kFga) {
        const int kmax = std::max(1, n / 2);
        strength_cum.resize(static_cast<std::size_t>(kmax));
        double total = 0.0;
        for (int k = 1; k <= kmax; ++k) {
            total += std::pow(static_cast<double>(k), -cfg.beta);
            strength_cum[static_cast<std::size_t>(k - 1)] = total;
        }
    }

    SolverRun run;
    Solution cur(n);
    Fitness cur_fit = eval(cur);
    run.evaluations = 1;
    run.best = cur;
    run.best_fitness = cur_fit;

    int best_cov = 0;
    auto note_feasible = [&](const Fitness& f) {
        if (f.violation == 0.0 && f.coverage > best_cov) best_cov = f.coverage;
    };
    note_feasible(cur_fit);
    if (observer) observer(cur_fit);

    Solution child = cur;
    while (run.evaluations < cfg.evaluation_budget) {
        child = cur;
        switch (cfg.algorithm) {
            case Algorithm::kEa:
                flip_with_rate(child, 1.0 / n, eng);
                break;
            case Algorithm::kFga: {
                const double u = rng::uniform01(eng) * strength_cum.back();
                const auto it = std::upper_bound(strength_cum.begin(), strength_cum.end(), u);
                const int k = static_cast<int>(it - strength_cum.begin()) + 1;
                flip_with_rate(child, static_cast<double>(k) / n, eng);
                break;
            }
            case Algorithm::kGhc:
                child.bits[static_cast<std::size_t>(rng::uniform_int(eng, 0, n - 1))] ^= 1;
                break;
        }
        const Fitness child_fit = eval(child);
        ++run.evaluations;
        note_feasible(child_fit);
        if (beats(child_fit, run.best_fitness)) {
            run.best = child;
            run.best_fitness = child_fit;
        }
        if (!beats(cur_fit, child_fit)) {
            cur = child;
            cur_fit = child_fit;
        }
        if (observer) observer(cur_fit);
    }

    run.best_objective = best_cov >= 1 ? static_cast<double>(best_cov) : kEpsilonObjective;
    return run;
}

static Solution run_with(const ChanceInstance& inst, SolverConfig cfg, Algorithm a) {
    cfg.algorithm = a;
    return run_solver(inst, cfg).best;
}

Solution run_one_plus_one_ea(const ChanceInstance& inst, const SolverConfig& cfg) {
    return run_with(inst, cfg, Algorithm::kEa);
}

Solution run_fga(const ChanceInstance& inst, const SolverConfig& cfg) {
    return run_with(inst, cfg, Algorithm::kFga);
}

Solution run_ghc(const ChanceInstance& inst, const SolverConfig& cfg) {
    return run_with(inst, cfg, Algorithm::kGhc);
}

double best_objective(const ChanceInstance& inst, const SolverConfig& cfg) {
    return run_solver(inst, cfg).best_objective;
}

}  // namespace ccdiv
