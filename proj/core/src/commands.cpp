#include "ccdiv/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "ccdiv/errors.hpp"
#include "ccdiv/rng.hpp"
#include "ccdiv/stats.hpp"
#include "io_util.hpp"

namespace ccdiv::commands {

namespace fs = std::filesystem;
using nlohmann::json;
using detail::format_double;

MutationParams default_mutation_params(FeatureKind kind) {
    MutationParams p;
    p.target = vector_for(kind);
    if (p.target == CostVector::kExpectedCosts) {
        p.sigma1 = 3.0;
        p.sigma2 = 100.0;
    } else {
        p.sigma1 = 100.0;
        p.sigma2 = 3000.0;
    }
    p.lambda = 5.0;
    return p;
}

namespace {

std::shared_ptr<const CoverageGraph> load_graph_path(const fs::path& path) {
    if (path.extension() == ".mtx")
        return std::make_shared<CoverageGraph>(load_matrix_market(detail::read_text_file(path)));
    return std::make_shared<CoverageGraph>(graph_from_json(detail::read_text_file(path)));
}

std::string member_file_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "instance_%03zu.json", i);
    return buf;
}

json contribution_to_json(double c) {
    if (std::isinf(c)) return json("inf");
    return json(c);
}

double contribution_from_json(const json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw ParseError("manifest: contribution string must be \"inf\"");
    }
    if (!v.is_number()) throw ParseError("manifest: contribution must be a number or \"inf\"");
    return v.get<double>();
}

void check_range(bool ok, const std::string& message) {
    if (!ok) throw UsageError(message);
}

}  // namespace

void save_checkpoint(const std::string& dir, const Checkpoint& cp) {
    cp.population.validate();
    const auto& members = cp.population.members;
    for (const auto& m : members)
        if (m.instance.graph != members.front().instance.graph)
            throw std::invalid_argument("checkpoint members must share one graph");

    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create directory " + dir + ": " + ec.message());

    detail::write_text_file(fs::path(dir) / "graph.json",
                            ccdiv::to_json(*members.front().instance.graph));

    json manifest;
    manifest["algorithms"] = json::array({to_string(cp.alg1), to_string(cp.alg2)});
    manifest["feature_kind"] = to_string(cp.population.feature_kind);
    manifest["iteration"] = cp.iteration;
    auto member_docs = json::array();
    for (std::size_t i = 0; i < members.size(); ++i) {
        const std::string name = member_file_name(i);
        detail::write_text_file(fs::path(dir) / name,
                                ccdiv::to_json(members[i].instance, "graph.json"));
        json entry;
        entry["contribution"] = contribution_to_json(members[i].contribution);
        entry["feature"] = members[i].feature;
        entry["file"] = name;
        entry["r_prime"] = members[i].r_prime;
        member_docs.push_back(std::move(entry));
    }
    manifest["members"] = std::move(member_docs);
    manifest["runs"] = cp.runs;
    manifest["seed"] = cp.seed;
    manifest["set_diversity"] = cp.population.set_diversity();
    manifest["solver_evals"] = cp.solver_evals;
    manifest["theta"] = cp.theta;
    manifest["threshold"] = cp.population.threshold;
    detail::write_text_file(fs::path(dir) / "manifest.json", manifest.dump(2) + "\n");
}

Checkpoint load_checkpoint(const std::string& dir) {
    json manifest;
    try {
        manifest = json::parse(detail::read_text_file(fs::path(dir) / "manifest.json"));
    } catch (const json::exception& e) {
        throw ParseError("manifest: " + std::string(e.what()));
    }

    Checkpoint cp;
    try {
        const auto& algs = manifest.at("algorithms");
        if (!algs.is_array() || algs.size() != 2)
            throw ParseError("manifest: \"algorithms\" must list two names");
        cp.alg1 = algorithm_from_string(algs[0].get<std::string>());
        cp.alg2 = algorithm_from_string(algs[1].get<std::string>());
        cp.population.feature_kind =
            feature_kind_from_string(manifest.at("feature_kind").get<std::string>());
        cp.population.threshold = manifest.at("threshold").get<double>();
        cp.iteration = manifest.at("iteration").get<std::int64_t>();
        cp.runs = manifest.at("runs").get<int>();
        cp.seed = manifest.at("seed").get<std::uint64_t>();
        cp.solver_evals = manifest.at("solver_evals").get<std::int64_t>();
        cp.theta = manifest.at("theta").get<double>();

        auto graph = std::make_shared<const CoverageGraph>(
            graph_from_json(detail::read_text_file(fs::path(dir) / "graph.json")));
        for (const auto& entry : manifest.at("members")) {
            PopulationMember m;
            const auto file = entry.at("file").get<std::string>();
            m.instance = instance_from_json(detail::read_text_file(fs::path(dir) / file), dir, graph);
            m.feature = entry.at("feature").get<double>();
            m.r_prime = entry.at("r_prime").get<double>();
            m.contribution = contribution_from_json(entry.at("contribution"));
            cp.population.members.push_back(std::move(m));
        }
        const double stored_ds = manifest.at("set_diversity").get<double>();
        if (stored_ds != cp.population.set_diversity())
            throw ValidationError("manifest: set_diversity does not match the members");
    } catch (const json::exception& e) {
        throw ParseError("manifest: " + std::string(e.what()));
    }
    cp.population.validate();
    return cp;
}

void cmd_random_graph(const RandomGraphOptions& opt, std::ostream& out) {
    check_range(opt.nodes >= 1, "--nodes must be at least 1");
    check_range(opt.edge_prob >= 0.0 && opt.edge_prob <= 1.0, "--edge-prob must be in [0, 1]");
    check_range(!opt.output.empty(), "--output is required");

    const CoverageGraph g = generate_random_graph(opt.nodes, opt.edge_prob, opt.seed);
    detail::write_text_file(opt.output, to_json(g));
    out << "nodes: " << g.node_count << "\n";
    out << "edges: " << g.edge_count() << "\n";
    out << "graph written to " << opt.output << "\n";
}

void cmd_gen_initial(const GenInitialOptions& opt, std::ostream& out) {
    check_range(!opt.graph.empty(), "--graph is required");
    check_range(!opt.output_dir.empty(), "--output is required");
    check_range(opt.mu >= 3, "--mu must be at least 3");
    check_range(opt.runs >= 2, "--runs must be at least 2");
    check_range(opt.iterations >= 0, "--iterations must be non-negative");
    check_range(opt.solver_evals >= 1, "--solver-evals must be at least 1");
    check_range(opt.theta > 0.5 && opt.theta < 1.0, "--theta must be in (0.5, 1)");
    check_range(opt.alpha > 0.0 && opt.alpha <= 0.5, "--alpha must be in (0, 0.5]");
    check_range(opt.mu_max > 0.0, "--mu-max must be positive");
    check_range(opt.mu_sigma > 0.0 && opt.var_sigma > 0.0, "perturbation sigmas must be positive");
    check_range(opt.alg1 != opt.alg2, "the two algorithms must differ");

    auto graph = load_graph_path(opt.graph);
    SolverConfig cfg1, cfg2;
    cfg1.evaluation_budget = cfg2.evaluation_budget = opt.solver_evals;
    cfg1.algorithm = opt.alg1;
    cfg2.algorithm = opt.alg2;
    ConventionalParams cparams;
    cparams.mu_sigma = opt.mu_sigma;
    cparams.var_sigma = opt.var_sigma;
    cparams.mu_max = opt.mu_max;
    cparams.alpha = opt.alpha;

    Population pop;
    pop.feature_kind = opt.feature;
    std::string failures;
    for (int i = 0; i < opt.mu; ++i) {
        ConventionalResult res = evolve_conventional(
            graph, cfg1, cfg2, opt.runs, opt.theta, opt.iterations, cparams,
            rng::derive_seed(opt.seed, "member", static_cast<std::uint64_t>(i)),
            opt.max_parallel);
        out << "member " << i << ": R' = " << format_double(res.r_prime) << "\n";
        if (!(res.r_prime > 1.0)) {
            if (!failures.empty()) failures += ", ";
            failures += "member " + std::to_string(i) + " (R' = " + format_double(res.r_prime) + ")";
        }
        PopulationMember m;
        m.feature = feature(res.instance, opt.feature);
        m.r_prime = res.r_prime;
        m.instance = std::move(res.instance);
        pop.members.push_back(std::move(m));
    }
    if (!failures.empty())
        throw GenerationFailure("not discriminating after the evolution budget: " + failures);

    std::stable_sort(pop.members.begin(), pop.members.end(),
                     [](const PopulationMember& a, const PopulationMember& b) {
                         return a.feature < b.feature;
                     });
    double min_r = pop.members.front().r_prime;
    for (const auto& m : pop.members) min_r = std::min(min_r, m.r_prime);
    pop.threshold = threshold_from(min_r);
    pop.refresh_contributions();

    Checkpoint cp;
    cp.population = std::move(pop);
    cp.alg1 = opt.alg1;
    cp.alg2 = opt.alg2;
    cp.solver_evals = opt.solver_evals;
    cp.runs = opt.runs;
    cp.theta = opt.theta;
    cp.seed = opt.seed;
    cp.iteration = 0;
    save_checkpoint(opt.output_dir, cp);

    out << "threshold: " << format_double(cp.population.threshold) << "\n";
    out << "D_s: " << format_double(cp.population.set_diversity()) << "\n";
    out << "population written to " << opt.output_dir << "\n";
}

void cmd_evolve(const EvolveCmdOptions& opt, std::ostream& out) {
    check_range(!opt.population_dir.empty(), "--population is required");
    check_range(!opt.output_dir.empty(), "--output is required");
    check_range(opt.iterations >= 0, "--iterations must be non-negative");

    Checkpoint cp = load_checkpoint(opt.population_dir);
    const Algorithm alg1 = opt.alg1.value_or(cp.alg1);
    const Algorithm alg2 = opt.alg2.value_or(cp.alg2);
    const int runs = opt.runs.value_or(cp.runs);
    const double theta = opt.theta.value_or(cp.theta);
    const std::int64_t solver_evals = opt.solver_evals.value_or(cp.solver_evals);
    check_range(alg1 != alg2, "the two algorithms must differ");
    check_range(runs >= 2, "--runs must be at least 2");
    check_range(theta > 0.5 && theta < 1.0, "--theta must be in (0.5, 1)");
    check_range(solver_evals >= 1, "--solver-evals must be at least 1");

    MutationParams params = default_mutation_params(cp.population.feature_kind);
    if (opt.sigma1) params.sigma1 = *opt.sigma1;
    if (opt.sigma2) params.sigma2 = *opt.sigma2;
    params.lambda = opt.lambda;
    check_range(params.sigma1 > 0.0, "--sigma1 must be positive");
    check_range(params.sigma2 > 0.0, "--sigma2 must be positive");
    check_range(params.lambda > 0.0, "--lambda must be positive");

    SolverConfig cfg1, cfg2;
    cfg1.evaluation_budget = cfg2.evaluation_budget = solver_evals;
    cfg1.algorithm = alg1;
    cfg2.algorithm = alg2;

    out << "initial D_s: " << format_double(cp.population.set_diversity()) << "\n";

    std::ofstream trajectory;
    if (!opt.trajectory.empty()) {
        trajectory.open(opt.trajectory, std::ios::binary | std::ios::trunc);
        if (!trajectory) throw UsageError("cannot write " + opt.trajectory);
        trajectory << "iteration,accepted,child_feature,child_r_prime,D_s_after\n";
    }
    const std::int64_t progress_step = std::max<std::int64_t>(1, opt.iterations / 10);
    const EvolveObserver observer = [&](const Population&, const IterationRecord& rec) {
        if (trajectory.is_open()) {
            trajectory << rec.iteration << ',' << (rec.accepted ? 1 : 0) << ','
                       << format_double(rec.child_feature) << ','
                       << format_double(rec.child_r_prime) << ','
                       << format_double(rec.set_diversity_after) << "\n";
        }
        if (rec.iteration % progress_step == 0)
            out << "iteration " << rec.iteration << "/" << opt.iterations
                << ": D_s = " << format_double(rec.set_diversity_after) << "\n";
    };

    EvolveOptions eopts;
    eopts.iterations = opt.iterations;
    eopts.runs = runs;
    eopts.theta = theta;
    eopts.seed = opt.seed;
    eopts.max_parallel = opt.max_parallel;
    Population evolved = evolve_diverse(std::move(cp.population), cfg1, cfg2, params, eopts, observer);

    if (trajectory.is_open()) {
        trajectory.flush();
        if (!trajectory) throw UsageError("write failed for " + opt.trajectory);
    }

    Checkpoint next;
    next.population = std::move(evolved);
    next.alg1 = alg1;
    next.alg2 = alg2;
    next.solver_evals = solver_evals;
    next.runs = runs;
    next.theta = theta;
    next.seed = opt.seed;
    next.iteration = cp.iteration + opt.iterations;
    save_checkpoint(opt.output_dir, next);

    out << "final D_s: " << format_double(next.population.set_diversity()) << "\n";
    out << "population written to " << opt.output_dir << "\n";
}

void cmd_ratio(const RatioOptions& opt, std::ostream& out) {
    check_range(!opt.instance.empty(), "--instance is required");
    check_range(opt.runs >= 2, "--runs must be at least 2");
    check_range(opt.solver_evals >= 1, "--solver-evals must be at least 1");
    check_range(opt.theta > 0.5 && opt.theta < 1.0, "--theta must be in (0.5, 1)");

    const ChanceInstance inst = instance_from_json(detail::read_text_file(opt.instance),
                                                   fs::path(opt.instance).parent_path());
    SolverConfig cfg1, cfg2;
    cfg1.evaluation_budget = cfg2.evaluation_budget = opt.solver_evals;
    cfg1.algorithm = opt.alg1;
    cfg2.algorithm = opt.alg2;

    const RatioReport report =
        discounted_ratio(inst, cfg1, cfg2, opt.runs, opt.theta, opt.seed, opt.max_parallel);
    if (!opt.output.empty()) detail::write_text_file(opt.output, to_json(report));

    for (std::size_t i = 0; i < report.ratios.size(); ++i)
        out << "run " << i << ": " << to_string(opt.alg1) << " " << format_double(report.per_run_a1[i])
            << ", " << to_string(opt.alg2) << " " << format_double(report.per_run_a2[i])
            << ", ratio " << format_double(report.ratios[i]) << "\n";
    out << "mean ratio: " << format_double(report.mean_ratio) << "\n";
    out << "std ratio: " << format_double(report.std_ratio) << "\n";
    out << "R': " << format_double(report.discounted) << "\n";
    if (!opt.output.empty()) out << "report written to " << opt.output << "\n";
}

void cmd_report(const ReportOptions& opt, std::ostream& out) {
    check_range(!opt.population_dirs.empty(), "at least one population directory is required");

    struct SetStats {
        std::string label;
        std::size_t count;
        double average, stddev, ds;
        stats::FiveNumberSummary box;
    };
    std::vector<SetStats> sets;
    FeatureKind kind = FeatureKind::kCostMean;

    for (std::size_t s = 0; s < opt.population_dirs.size(); ++s) {
        const auto& dir = opt.population_dirs[s];
        const Checkpoint cp = load_checkpoint(dir);
        if (s == 0) {
            kind = cp.population.feature_kind;
        } else if (cp.population.feature_kind != kind) {
            throw UsageError("population sets track different features: " + dir + " uses " +
                             to_string(cp.population.feature_kind) + ", expected " +
                             to_string(kind));
        }
        // Features re-derived from the instances, not the manifest caches.
        std::vector<double> feats;
        feats.reserve(cp.population.size());
        for (const auto& m : cp.population.members)
            feats.push_back(feature(m.instance, kind));

        SetStats st;
        st.label = dir;
        st.count = feats.size();
        st.average = stats::mean(feats);
        st.stddev = stats::sample_std(feats);
        st.ds = ccdiv::set_diversity(feats);
        st.box = stats::five_number_summary(feats);
        sets.push_back(std::move(st));
    }

    std::string summary = "set,feature,members,average,std,min,max,set_diversity\n";
    std::string box = "set,feature,min,q1,median,q3,max\n";
    for (const auto& st : sets) {
        summary += detail::csv_field(st.label);
        summary += ',';
        summary += to_string(kind);
        summary += ',' + std::to_string(st.count) + ',' + format_double(st.average) + ',' +
                   format_double(st.stddev) + ',' + format_double(st.box.min) + ',' +
                   format_double(st.box.max) + ',' + format_double(st.ds) + "\n";
        box += detail::csv_field(st.label);
        box += ',';
        box += to_string(kind);
        box += ',' + format_double(st.box.min) + ',' + format_double(st.box.q1) + ',' +
               format_double(st.box.median) + ',' + format_double(st.box.q3) + ',' +
               format_double(st.box.max) + "\n";

        out << st.label << ": " << to_string(kind) << " n=" << st.count
            << " average=" << format_double(st.average) << " std=" << format_double(st.stddev)
            << " min=" << format_double(st.box.min) << " max=" << format_double(st.box.max)
            << " D_s=" << format_double(st.ds) << "\n";
    }

    if (!opt.summary_out.empty()) {
        detail::write_text_file(opt.summary_out, summary);
        out << "summary written to " << opt.summary_out << "\n";
    }
    if (!opt.box_out.empty()) {
        detail::write_text_file(opt.box_out, box);
        out << "box stats written to " << opt.box_out << "\n";
    }
}

}  // namespace ccdiv::commands
