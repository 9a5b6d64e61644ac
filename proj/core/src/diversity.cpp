#include "ccdiv/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ccdiv/errors.hpp"
#include "ccdiv/rng.hpp"
#include "ccdiv/stats.hpp"

namespace ccdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_sorted(std::span<const double> s, const char* who) {
    if (!std::is_sorted(s.begin(), s.end()))
        throw std::invalid_argument(std::string(who) + ": features not sorted ascending");
}

}  // namespace

double contribution(std::span<const double> sorted_features, std::size_t i) {
    if (sorted_features.size() < 2)
        throw std::invalid_argument("contribution: need at least two members");
    if (i >= sorted_features.size())
        throw std::invalid_argument("contribution: index out of range");
    require_sorted(sorted_features, "contribution");
    if (i == 0 || i == sorted_features.size() - 1) return kInf;
    // A duplicated value zeroes one of the gaps, so the product already
    // implements the shared-value rule for interior members.
    return (sorted_features[i] - sorted_features[i - 1]) *
           (sorted_features[i + 1] - sorted_features[i]);
}

double set_diversity(std::span<const double> sorted_features) {
    if (sorted_features.size() < 3)
        throw std::invalid_argument("set_diversity: need at least three members");
    require_sorted(sorted_features, "set_diversity");
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < sorted_features.size(); ++i)
        sum += (sorted_features[i] - sorted_features[i - 1]) *
               (sorted_features[i + 1] - sorted_features[i]);
    return sum;
}

int indicator(std::span<const double> sorted_features, std::size_t i) {
    if (sorted_features.empty()) throw std::invalid_argument("indicator: empty feature list");
    if (i >= sorted_features.size()) throw std::invalid_argument("indicator: index out of range");
    require_sorted(sorted_features, "indicator");
    if (i == sorted_features.size() - 1) return 1;
    if (i == 0) return -1;
    const double left = sorted_features[i] - sorted_features[i - 1];
    const double right = sorted_features[i + 1] - sorted_features[i];
    return left <= right ? 1 : -1;
}

std::size_t select_parent(std::size_t mu, std::uint64_t seed) {
    if (mu < 3) throw std::invalid_argument("select_parent: need at least three members");
    auto eng = rng::make_engine(seed);
    const double u = rng::uniform01(eng);
    if (u < 1.0 / 3.0) return 0;
    if (u < 2.0 / 3.0) return mu - 1;
    return static_cast<std::size_t>(
        rng::uniform_int(eng, 1, static_cast<std::int64_t>(mu) - 2));
}

namespace {

void check_direction(int direction) {
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("mutation direction must be +1 or -1");
}

std::vector<double>& target_vector(ChanceInstance& inst, CostVector target) {
    return target == CostVector::kExpectedCosts ? inst.mu : inst.var;
}

double target_ceiling(const ChanceInstance& inst, CostVector target) {
    return target == CostVector::kExpectedCosts ? inst.mu_max : variance_ceiling(inst.mu_max);
}

}  // namespace

ChanceInstance mutate_independent(const ChanceInstance& parent, int direction,
                                  const MutationParams& params, std::uint64_t seed) {
    check_direction(direction);
    if (!(params.sigma1 > 0.0)) throw std::invalid_argument("sigma1 must be positive");
    parent.validate();

    ChanceInstance child = parent;
    auto& vec = target_vector(child, params.target);
    const double ceiling = target_ceiling(child, params.target);
    auto eng = rng::make_engine(seed);
    for (double& v : vec) {
        const double shift = std::abs(rng::normal(eng, 0.0, params.sigma1));
        v = std::clamp(v + direction * shift, 0.0, ceiling);
    }
    return child;
}

ChanceInstance mutate_dependent(const ChanceInstance& parent, int direction,
                                const MutationParams& params, std::uint64_t seed) {
    check_direction(direction);
    if (!(params.sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
    if (!(params.lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    parent.validate();

    ChanceInstance child = parent;
    auto& vec = target_vector(child, params.target);
    const double ceiling = target_ceiling(child, params.target);
    const double avg = stats::mean(vec);

    std::vector<std::size_t> low, high;  // value <= mean / value > mean
    for (std::size_t i = 0; i < vec.size(); ++i)
        (vec[i] <= avg ? low : high).push_back(i);
    if (high.empty()) return child;  // all values equal

    auto eng = rng::make_engine(seed);
    const int m = rng::poisson(eng, params.lambda);
    const std::size_t swaps =
        std::min({static_cast<std::size_t>(m) + 1, low.size(), high.size()});

    for (std::size_t done = 0; done < swaps; ++done) {
        // A transfer that would leave [0, ceiling] is redrawn with a fresh
        // pair; after 10 misses this swap is dropped so the mean stays put.
        for (int attempt = 0; attempt < 10; ++attempt) {
            const auto spos = static_cast<std::size_t>(
                rng::uniform_int(eng, 0, static_cast<std::int64_t>(low.size()) - 1));
            const auto tpos = static_cast<std::size_t>(
                rng::uniform_int(eng, 0, static_cast<std::int64_t>(high.size()) - 1));
            const double delta = std::abs(rng::normal(eng, 0.0, params.sigma2));
            const std::size_t s = low[spos];
            const std::size_t t = high[tpos];
            const double next_t = vec[t] + direction * delta;
            const double next_s = vec[s] - direction * delta;
            if (next_t >= 0.0 && next_t <= ceiling && next_s >= 0.0 && next_s <= ceiling) {
                vec[t] = next_t;
                vec[s] = next_s;
                low[spos] = low.back();
                low.pop_back();
                high[tpos] = high.back();
                high.pop_back();
                break;
            }
        }
    }
    return child;
}

std::vector<double> Population::features() const {
    std::vector<double> f;
    f.reserve(members.size());
    for (const auto& m : members) f.push_back(m.feature);
    return f;
}

double Population::set_diversity() const { return ccdiv::set_diversity(features()); }

void Population::refresh_contributions() {
    const auto f = features();
    for (std::size_t i = 0; i < members.size(); ++i)
        members[i].contribution = ccdiv::contribution(f, i);
}

void Population::validate() const {
    if (members.size() < 3) throw ValidationError("population needs at least three members");
    const auto f = features();
    if (!std::is_sorted(f.begin(), f.end()))
        throw ValidationError("population members not sorted by feature");
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& m = members[i];
        m.instance.validate();
        if (feature(m.instance, feature_kind) != m.feature)
            throw ValidationError("member " + std::to_string(i) + ": cached feature is stale");
        if (ccdiv::contribution(f, i) != m.contribution)
            throw ValidationError("member " + std::to_string(i) + ": cached contribution is stale");
        if (!(m.r_prime >= threshold))
            throw ValidationError("member " + std::to_string(i) + ": R' below threshold");
    }
}

Population evolve_diverse(Population population, const SolverConfig& alg1,
                          const SolverConfig& alg2, const MutationParams& params,
                          const EvolveOptions& opts, const EvolveObserver& observer) {
    population.validate();
    if (params.target != vector_for(population.feature_kind))
        throw std::invalid_argument("mutation target does not match the population's feature");
    if (opts.iterations < 0) throw std::invalid_argument("iterations must be non-negative");
    if (opts.runs < 2) throw std::invalid_argument("at least two runs are needed for a spread");
    (void)k_theta(opts.theta);

    const FeatureKind kind = population.feature_kind;
    const bool independent = is_mean_feature(kind);
    auto& members = population.members;

    for (std::int64_t it = 1; it <= opts.iterations; ++it) {
        const auto iter = static_cast<std::uint64_t>(it);
        const auto feats = population.features();
        const std::size_t pidx =
            select_parent(members.size(), rng::derive_seed(opts.seed, "evolve-select", iter));
        const int dir = indicator(feats, pidx);
        const std::uint64_t mutate_seed = rng::derive_seed(opts.seed, "evolve-mutate", iter);
        const ChanceInstance child =
            independent ? mutate_independent(members[pidx].instance, dir, params, mutate_seed)
                        : mutate_dependent(members[pidx].instance, dir, params, mutate_seed);

        const RatioReport report =
            discounted_ratio(child, alg1, alg2, opts.runs, opts.theta,
                             rng::derive_seed(opts.seed, "evolve-ratio", iter), opts.max_parallel);

        IterationRecord rec;
        rec.iteration = it;
        rec.child_feature = feature(child, kind);
        rec.child_r_prime = report.discounted;

        if (report.discounted >= population.threshold) {
            PopulationMember entry;
            entry.instance = child;
            entry.feature = rec.child_feature;
            entry.r_prime = report.discounted;
            const auto pos = std::upper_bound(
                members.begin(), members.end(), entry.feature,
                [](double value, const PopulationMember& m) { return value < m.feature; });
            members.insert(pos, std::move(entry));
            population.refresh_contributions();

            double min_contribution = kInf;
            for (const auto& m : members) min_contribution = std::min(min_contribution, m.contribution);
            std::vector<std::size_t> worst;
            for (std::size_t i = 0; i < members.size(); ++i)
                if (members[i].contribution == min_contribution) worst.push_back(i);
            auto evict_eng = rng::make_engine(rng::derive_seed(opts.seed, "evolve-evict", iter));
            const std::size_t victim =
                worst[static_cast<std::size_t>(rng::uniform_int(
                    evict_eng, 0, static_cast<std::int64_t>(worst.size()) - 1))];
            members.erase(members.begin() + static_cast<std::ptrdiff_t>(victim));
            population.refresh_contributions();
            rec.accepted = true;
        }

        rec.set_diversity_after = population.set_diversity();
        if (observer) observer(population, rec);
    }
    return population;
}

ConventionalResult evolve_conventional(std::shared_ptr<const CoverageGraph> graph,
                                       const SolverConfig& alg1, const SolverConfig& alg2,
                                       int runs, double theta, std::int64_t iterations,
                                       const ConventionalParams& params, std::uint64_t seed,
                                       int max_parallel) {
    if (!graph) throw std::invalid_argument("evolve_conventional: null graph");
    if (iterations < 0) throw std::invalid_argument("iterations must be non-negative");
    if (!(params.mu_sigma > 0.0) || !(params.var_sigma > 0.0))
        throw std::invalid_argument("perturbation sigmas must be positive");

    ConventionalResult cur;
    cur.instance = sample_initial_instance(std::move(graph), rng::derive_seed(seed, "conv-init"),
                                           params.mu_max, params.alpha);
    cur.r_prime = discounted_ratio(cur.instance, alg1, alg2, runs, theta,
                                   rng::derive_seed(seed, "conv-ratio", 0), max_parallel)
                      .discounted;

    const double vcap = variance_ceiling(params.mu_max);
    for (std::int64_t it = 1; it <= iterations; ++it) {
        const auto iter = static_cast<std::uint64_t>(it);
        ChanceInstance child = cur.instance;
        auto eng = rng::make_engine(rng::derive_seed(seed, "conv-perturb", iter));
        for (double& v : child.mu)
            v = std::clamp(v + rng::normal(eng, 0.0, params.mu_sigma), 0.0, params.mu_max);
        for (double& v : child.var)
            v = std::clamp(v + rng::normal(eng, 0.0, params.var_sigma), 0.0, vcap);

        const double child_r = discounted_ratio(child, alg1, alg2, runs, theta,
                                                rng::derive_seed(seed, "conv-ratio", iter),
                                                max_parallel)
                                   .discounted;
        if (child_r >= cur.r_prime) {
            cur.instance = std::move(child);
            cur.r_prime = child_r;
        }
    }
    return cur;
}

}  // namespace ccdiv
