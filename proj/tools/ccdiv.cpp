#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccdiv/commands.hpp"
#include "ccdiv/errors.hpp"

namespace {

using nlohmann::json;
namespace cmds = ccdiv::commands;

std::pair<ccdiv::Algorithm, ccdiv::Algorithm> parse_pair(const std::string& s) {
    const auto dash = s.find('-');
    if (dash == std::string::npos)
        throw ccdiv::UsageError("pair must name two algorithms like ea-ghc or ea-fga");
    const auto a = ccdiv::algorithm_from_string(s.substr(0, dash));
    const auto b = ccdiv::algorithm_from_string(s.substr(dash + 1));
    if (a == b) throw ccdiv::UsageError("pair must name two different algorithms");
    return {a, b};
}

json load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ccdiv::UsageError("cannot read config " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ccdiv::ParseError("config " + path + ": " + e.what());
    }
}

// Keys accepted across all commands; anything else in a config file is a typo.
const std::set<std::string>& known_config_keys() {
    static const std::set<std::string> keys = {
        "alpha",     "box",         "edge_prob", "feature",      "graph",    "instance",
        "iterations", "lambda",     "max_parallel", "mu",        "mu_max",   "mu_sigma",
        "nodes",     "output",      "pair",      "population",   "populations", "runs",
        "seed",      "sigma1",      "sigma2",    "solver_evals", "summary",  "theta",
        "trajectory", "var_sigma",
    };
    return keys;
}

template <typename T>
void assign(const json& cfg, const char* key, T& out) {
    if (!cfg.contains(key)) return;
    try {
        out = cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw ccdiv::UsageError(std::string("config: bad value for \"") + key + "\"");
    }
}

template <typename T>
void assign(const json& cfg, const char* key, std::optional<T>& out) {
    if (!cfg.contains(key)) return;
    T v{};
    assign(cfg, key, v);
    out = v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolves diverse sets of solver-discriminating instances of the "
                 "chance-constrained maximum coverage problem"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ccdiv 0.1.0");

    std::string config_path;
    bool desk = false;

    cmds::RandomGraphOptions rg;
    auto* rg_cmd = app.add_subcommand("random-graph", "Generate a seeded G(n, p) graph file");
    rg_cmd->add_option("--nodes", rg.nodes, "Node count");
    rg_cmd->add_option("--edge-prob", rg.edge_prob, "Edge probability in [0, 1]");
    rg_cmd->add_option("--seed", rg.seed, "Master seed");
    rg_cmd->add_option("--output", rg.output, "Graph JSON path to write");

    cmds::GenInitialOptions gi;
    std::string gi_feature = "ft1", gi_pair = "ea-ghc";
    auto* gi_cmd = app.add_subcommand(
        "gen-initial", "Evolve an initial population of discriminating instances one by one");
    gi_cmd->add_option("--graph", gi.graph, "Graph file (.mtx or JSON)");
    gi_cmd->add_option("--feature", gi_feature, "Feature under evolution: ft1, ft2, ft3, ft4");
    gi_cmd->add_option("--pair", gi_pair, "Algorithm pair, e.g. ea-ghc or ea-fga");
    gi_cmd->add_option("--mu", gi.mu, "Population size");
    gi_cmd->add_option("--iterations", gi.iterations, "Evolution steps per member");
    gi_cmd->add_option("--solver-evals", gi.solver_evals, "Fitness evaluations per solver run");
    gi_cmd->add_option("--runs", gi.runs, "Paired solver runs per ratio evaluation");
    gi_cmd->add_option("--theta", gi.theta, "Confidence level for the ratio discount");
    gi_cmd->add_option("--alpha", gi.alpha, "Risk level of the chance constraint");
    gi_cmd->add_option("--mu-max", gi.mu_max, "Expected-cost ceiling");
    gi_cmd->add_option("--mu-sigma", gi.mu_sigma, "Baseline noise std for expected costs");
    gi_cmd->add_option("--var-sigma", gi.var_sigma, "Baseline noise std for variances");
    gi_cmd->add_option("--seed", gi.seed, "Master seed");
    gi_cmd->add_option("--output", gi.output_dir, "Population directory to write");
    gi_cmd->add_option("--max-parallel", gi.max_parallel, "Concurrent solver runs");

    cmds::EvolveCmdOptions ev;
    std::optional<std::string> ev_pair;
    auto* ev_cmd = app.add_subcommand(
        "evolve", "Run the population diversity loop from a saved checkpoint");
    ev_cmd->add_option("--population", ev.population_dir, "Input population directory");
    ev_cmd->add_option("--output", ev.output_dir, "Population directory to write");
    ev_cmd->add_option("--trajectory", ev.trajectory, "Per-generation CSV log to write");
    ev_cmd->add_option("--iterations", ev.iterations, "Generations to run");
    ev_cmd->add_option("--seed", ev.seed, "Master seed");
    ev_cmd->add_option("--lambda", ev.lambda, "Poisson mean for spread-mutation swap count");
    ev_cmd->add_option("--sigma1", ev.sigma1, "Shift-mutation std (default keyed to the feature)");
    ev_cmd->add_option("--sigma2", ev.sigma2, "Swap-mutation std (default keyed to the feature)");
    ev_cmd->add_option("--runs", ev.runs, "Paired solver runs per ratio evaluation");
    ev_cmd->add_option("--theta", ev.theta, "Confidence level for the ratio discount");
    ev_cmd->add_option("--solver-evals", ev.solver_evals, "Fitness evaluations per solver run");
    ev_cmd->add_option("--pair", ev_pair, "Algorithm pair (default: the checkpoint's)");
    ev_cmd->add_option("--max-parallel", ev.max_parallel, "Concurrent solver runs");

    cmds::RatioOptions rt;
    std::string rt_pair = "ea-ghc";
    auto* rt_cmd = app.add_subcommand(
        "ratio", "Evaluate the discounted performance ratio of one instance file");
    rt_cmd->add_option("--instance", rt.instance, "Instance JSON path");
    rt_cmd->add_option("--pair", rt_pair, "Algorithm pair, e.g. ea-ghc or ea-fga");
    rt_cmd->add_option("--solver-evals", rt.solver_evals, "Fitness evaluations per solver run");
    rt_cmd->add_option("--runs", rt.runs, "Paired solver runs");
    rt_cmd->add_option("--theta", rt.theta, "Confidence level for the ratio discount");
    rt_cmd->add_option("--seed", rt.seed, "Master seed");
    rt_cmd->add_option("--output", rt.output, "Report JSON path to write");
    rt_cmd->add_option("--max-parallel", rt.max_parallel, "Concurrent solver runs");

    cmds::ReportOptions rp;
    auto* rp_cmd = app.add_subcommand(
        "report", "Summarize population sets as plot-ready CSV tables");
    rp_cmd->add_option("dirs", rp.population_dirs, "Population directories");
    rp_cmd->add_option("--summary", rp.summary_out, "Summary CSV path to write");
    rp_cmd->add_option("--box", rp.box_out, "Box-plot stats CSV path to write");

    for (auto* sub : {rg_cmd, gi_cmd, ev_cmd, rt_cmd, rp_cmd}) {
        sub->add_option("--config", config_path, "JSON config file; explicit flags override it");
        sub->add_flag("--desk", desk, "Desk-scale preset (n=50, mu=10, 2000 evals, 500 iterations)");
    }

    // The config file and preset must land before CLI11 assigns flag values,
    // so the subcommand and those two options are read from argv up front.
    std::string subname;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--desk") {
            desk = true;
        } else if (arg == "--config") {
            if (i + 1 < argc) config_path = argv[++i];
        } else if (arg.rfind("--config=", 0) == 0) {
            config_path = arg.substr(9);
        } else if (subname.empty() && !arg.empty() && arg[0] != '-') {
            subname = arg;
        }
    }

    try {
        if (desk) {
            rg.nodes = 50;
            rg.edge_prob = 0.1;
            gi.mu = 10;
            gi.solver_evals = 2000;
            gi.iterations = 500;
            ev.iterations = 500;
            ev.solver_evals = 2000;
            rt.solver_evals = 2000;
        }
        if (!config_path.empty()) {
            const json cfg = load_config(config_path);
            if (!cfg.is_object()) throw ccdiv::UsageError("config must be a JSON object");
            for (const auto& [key, value] : cfg.items()) {
                (void)value;
                if (!known_config_keys().count(key))
                    throw ccdiv::UsageError("config: unknown key \"" + key + "\"");
            }
            if (subname == "random-graph") {
                assign(cfg, "nodes", rg.nodes);
                assign(cfg, "edge_prob", rg.edge_prob);
                assign(cfg, "seed", rg.seed);
                assign(cfg, "output", rg.output);
            } else if (subname == "gen-initial") {
                assign(cfg, "graph", gi.graph);
                assign(cfg, "feature", gi_feature);
                assign(cfg, "pair", gi_pair);
                assign(cfg, "mu", gi.mu);
                assign(cfg, "iterations", gi.iterations);
                assign(cfg, "solver_evals", gi.solver_evals);
                assign(cfg, "runs", gi.runs);
                assign(cfg, "theta", gi.theta);
                assign(cfg, "alpha", gi.alpha);
                assign(cfg, "mu_max", gi.mu_max);
                assign(cfg, "mu_sigma", gi.mu_sigma);
                assign(cfg, "var_sigma", gi.var_sigma);
                assign(cfg, "seed", gi.seed);
                assign(cfg, "output", gi.output_dir);
                assign(cfg, "max_parallel", gi.max_parallel);
            } else if (subname == "evolve") {
                assign(cfg, "population", ev.population_dir);
                assign(cfg, "output", ev.output_dir);
                assign(cfg, "trajectory", ev.trajectory);
                assign(cfg, "iterations", ev.iterations);
                assign(cfg, "seed", ev.seed);
                assign(cfg, "lambda", ev.lambda);
                assign(cfg, "sigma1", ev.sigma1);
                assign(cfg, "sigma2", ev.sigma2);
                assign(cfg, "runs", ev.runs);
                assign(cfg, "theta", ev.theta);
                assign(cfg, "solver_evals", ev.solver_evals);
                assign(cfg, "pair", ev_pair);
                assign(cfg, "max_parallel", ev.max_parallel);
            } else if (subname == "ratio") {
                assign(cfg, "instance", rt.instance);
                assign(cfg, "pair", rt_pair);
                assign(cfg, "solver_evals", rt.solver_evals);
                assign(cfg, "runs", rt.runs);
                assign(cfg, "theta", rt.theta);
                assign(cfg, "seed", rt.seed);
                assign(cfg, "output", rt.output);
                assign(cfg, "max_parallel", rt.max_parallel);
            } else if (subname == "report") {
                assign(cfg, "populations", rp.population_dirs);
                assign(cfg, "summary", rp.summary_out);
                assign(cfg, "box", rp.box_out);
            }
        }

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return 2;
        }

        if (rg_cmd->parsed()) {
            cmds::cmd_random_graph(rg, std::cout);
        } else if (gi_cmd->parsed()) {
            gi.feature = ccdiv::feature_kind_from_string(gi_feature);
            std::tie(gi.alg1, gi.alg2) = parse_pair(gi_pair);
            cmds::cmd_gen_initial(gi, std::cout);
        } else if (ev_cmd->parsed()) {
            if (ev_pair) {
                const auto [a, b] = parse_pair(*ev_pair);
                ev.alg1 = a;
                ev.alg2 = b;
            }
            cmds::cmd_evolve(ev, std::cout);
        } else if (rt_cmd->parsed()) {
            std::tie(rt.alg1, rt.alg2) = parse_pair(rt_pair);
            cmds::cmd_ratio(rt, std::cout);
        } else if (rp_cmd->parsed()) {
            cmds::cmd_report(rp, std::cout);
        }
        return 0;
    } catch (const ccdiv::GenerationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ccdiv::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ccdiv::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ccdiv::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
