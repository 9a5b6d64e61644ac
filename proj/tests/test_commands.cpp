#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ccdiv/commands.hpp"
#include "ccdiv/errors.hpp"
#include "ccdiv/perf_ratio.hpp"
#include "ccdiv/stats.hpp"

using namespace ccdiv;
using namespace ccdiv::commands;
namespace fs = std::filesystem;

static fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "ccdiv_cmd_tests" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

TEST_CASE("mutation defaults are keyed to the evolved feature") {
    auto p1 = default_mutation_params(FeatureKind::kCostMean);
    CHECK(p1.sigma1 == 3.0);
    CHECK(p1.target == CostVector::kExpectedCosts);
    auto p2 = default_mutation_params(FeatureKind::kVarianceMean);
    CHECK(p2.sigma1 == 100.0);
    CHECK(p2.target == CostVector::kVariances);
    auto p3 = default_mutation_params(FeatureKind::kCostStd);
    CHECK(p3.sigma2 == 100.0);
    CHECK(p3.target == CostVector::kExpectedCosts);
    auto p4 = default_mutation_params(FeatureKind::kVarianceStd);
    CHECK(p4.sigma2 == 3000.0);
    CHECK(p4.target == CostVector::kVariances);
    CHECK(p1.lambda == 5.0);
    CHECK(p4.lambda == 5.0);
}

// ---------------------------------------------------------------------------
// random-graph
// ---------------------------------------------------------------------------

TEST_CASE("cmd_random_graph writes a loadable, reproducible graph") {
    const auto dir = fresh_dir("rg");
    RandomGraphOptions opt;
    opt.nodes = 20;
    opt.edge_prob = 0.3;
    opt.seed = 5;
    opt.output = (dir / "g.json").string();

    std::ostringstream out;
    cmd_random_graph(opt, out);
    CHECK(out.str().find("nodes: 20") != std::string::npos);

    const auto g = graph_from_json(slurp(dir / "g.json"));
    CHECK(g.node_count == 20);

    opt.output = (dir / "g2.json").string();
    std::ostringstream out2;
    cmd_random_graph(opt, out2);
    CHECK(slurp(dir / "g.json") == slurp(dir / "g2.json"));

    opt.nodes = 0;
    CHECK_THROWS_AS(cmd_random_graph(opt, out), UsageError);
    opt.nodes = 5;
    opt.edge_prob = 1.5;
    CHECK_THROWS_AS(cmd_random_graph(opt, out), UsageError);
}

// ---------------------------------------------------------------------------
// checkpoints
// ---------------------------------------------------------------------------

// Shared fixture state: the miniature pipeline is slow enough that the later
// cases reuse the directories the earlier ones produced.
static const fs::path g_root = fs::temp_directory_path() / "ccdiv_cmd_tests";

static GenInitialOptions tiny_gen_options(const fs::path& out_dir, std::uint64_t seed) {
    GenInitialOptions opt;
    opt.graph = (g_root / "pipeline" / "graph.json").string();
    opt.feature = FeatureKind::kCostMean;
    opt.mu = 3;
    opt.iterations = 30;
    opt.solver_evals = 60;
    opt.runs = 2;
    opt.seed = seed;
    opt.output_dir = out_dir.string();
    return opt;
}

TEST_CASE("gen-initial builds a checkpoint whose caches and threshold line up") {
    const auto dir = fresh_dir("pipeline");
    RandomGraphOptions g;
    g.nodes = 30;
    g.edge_prob = 0.15;
    g.seed = 7;
    g.output = (dir / "graph.json").string();
    std::ostringstream gout;
    cmd_random_graph(g, gout);

    // seed pinned to a population where every member ends discriminating
    const auto opt = tiny_gen_options(dir / "pop", 6);
    std::ostringstream out;
    cmd_gen_initial(opt, out);
    CHECK(out.str().find("threshold:") != std::string::npos);
    CHECK(out.str().find("member 0: R'") != std::string::npos);

    const auto cp = load_checkpoint(opt.output_dir);
    CHECK(cp.population.size() == 3);
    CHECK(cp.population.feature_kind == FeatureKind::kCostMean);
    CHECK(cp.alg1 == Algorithm::kEa);
    CHECK(cp.alg2 == Algorithm::kGhc);
    CHECK(cp.solver_evals == 60);
    CHECK(cp.runs == 2);
    CHECK(cp.iteration == 0);
    CHECK_NOTHROW(cp.population.validate());

    double min_r = std::numeric_limits<double>::infinity();
    for (const auto& m : cp.population.members) min_r = std::min(min_r, m.r_prime);
    CHECK(min_r > 1.0);
    CHECK(cp.population.threshold == threshold_from(min_r));

    // same seed, fresh directory: byte-identical artifacts
    auto opt2 = tiny_gen_options(dir / "pop_again", 6);
    std::ostringstream out2;
    cmd_gen_initial(opt2, out2);
    CHECK(slurp(dir / "pop" / "manifest.json") == slurp(dir / "pop_again" / "manifest.json"));
    CHECK(slurp(dir / "pop" / "instance_000.json") ==
          slurp(dir / "pop_again" / "instance_000.json"));
}

TEST_CASE("gen-initial refuses a population with a non-discriminating member") {
    const auto opt = tiny_gen_options(g_root / "pipeline" / "pop_fail", 1);
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_gen_initial(opt, out), GenerationFailure);
}

TEST_CASE("gen-initial validates its options") {
    auto opt = tiny_gen_options(g_root / "pipeline" / "pop_bad", 6);
    std::ostringstream out;
    auto bad = opt;
    bad.mu = 2;
    CHECK_THROWS_AS(cmd_gen_initial(bad, out), UsageError);
    bad = opt;
    bad.alg2 = Algorithm::kEa;  // same on both sides
    CHECK_THROWS_AS(cmd_gen_initial(bad, out), UsageError);
    bad = opt;
    bad.runs = 1;
    CHECK_THROWS_AS(cmd_gen_initial(bad, out), UsageError);
    bad = opt;
    bad.graph = (g_root / "does_not_exist.json").string();
    CHECK_THROWS_AS(cmd_gen_initial(bad, out), UsageError);
}

TEST_CASE("checkpoints survive a save/load round-trip exactly") {
    const auto cp = load_checkpoint((g_root / "pipeline" / "pop").string());
    const auto dir = fresh_dir("resaved");
    save_checkpoint(dir.string(), cp);
    const auto back = load_checkpoint(dir.string());
    REQUIRE(back.population.size() == cp.population.size());
    for (std::size_t i = 0; i < cp.population.size(); ++i) {
        const auto& a = cp.population.members[i];
        const auto& b = back.population.members[i];
        CHECK(a.feature == b.feature);
        CHECK(a.r_prime == b.r_prime);
        CHECK(a.contribution == b.contribution);
        CHECK(a.instance.mu == b.instance.mu);
        CHECK(a.instance.var == b.instance.var);
    }
    CHECK(back.population.threshold == cp.population.threshold);
    CHECK(back.seed == cp.seed);
    // extremes carry infinite contributions through the JSON encoding
    CHECK(std::isinf(back.population.members.front().contribution));
    CHECK(slurp(dir / "manifest.json").find("\"inf\"") != std::string::npos);
}

TEST_CASE("checkpoint loading rejects tampered manifests") {
    const auto src = (g_root / "pipeline" / "pop").string();
    const auto dir = fresh_dir("tampered");
    save_checkpoint(dir.string(), load_checkpoint(src));

    auto manifest = slurp(dir / "manifest.json");
    const auto pos = manifest.find("\"set_diversity\"");
    REQUIRE(pos != std::string::npos);
    auto broken = manifest;
    broken.replace(pos, 16, "\"set_diversity_x\"");
    {
        std::ofstream f(dir / "manifest.json", std::ios::binary);
        f << broken;
    }
    CHECK_THROWS_AS(load_checkpoint(dir.string()), ParseError);

    // a wrong stored diversity value must be caught, not silently accepted
    const auto vpos = manifest.find("\"set_diversity\": ");
    REQUIRE(vpos != std::string::npos);
    auto wrong = manifest;
    const auto digit = wrong.find_first_of("0123456789", vpos);
    wrong[digit] = wrong[digit] == '9' ? '8' : '9';
    {
        std::ofstream f(dir / "manifest.json", std::ios::binary);
        f << wrong;
    }
    CHECK_THROWS_AS(load_checkpoint(dir.string()), ValidationError);

    CHECK_THROWS_AS(load_checkpoint((g_root / "nowhere").string()), UsageError);
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

TEST_CASE("evolve advances a checkpoint and logs a trajectory") {
    const auto dir = g_root / "pipeline";
    EvolveCmdOptions opt;
    opt.population_dir = (dir / "pop").string();
    opt.output_dir = (dir / "pop_evolved").string();
    opt.trajectory = (dir / "traj.csv").string();
    opt.iterations = 6;
    opt.seed = 12;

    std::ostringstream out;
    cmd_evolve(opt, out);
    CHECK(out.str().find("initial D_s:") != std::string::npos);
    CHECK(out.str().find("final D_s:") != std::string::npos);

    const auto traj = slurp(dir / "traj.csv");
    CHECK(traj.rfind("iteration,accepted,child_feature,child_r_prime,D_s_after\n", 0) == 0);
    CHECK(std::count(traj.begin(), traj.end(), '\n') == 7);  // header + 6 rows

    const auto evolved = load_checkpoint(opt.output_dir);
    CHECK(evolved.iteration == 6);
    CHECK(evolved.population.size() == 3);
    CHECK_NOTHROW(evolved.population.validate());
    // settings carried over from the source checkpoint
    CHECK(evolved.solver_evals == 60);
    CHECK(evolved.runs == 2);

    // evolving the result further accumulates the iteration counter
    EvolveCmdOptions more = opt;
    more.population_dir = opt.output_dir;
    more.output_dir = (dir / "pop_evolved2").string();
    more.trajectory.clear();
    std::ostringstream out2;
    cmd_evolve(more, out2);
    CHECK(load_checkpoint(more.output_dir).iteration == 12);

    EvolveCmdOptions bad = opt;
    bad.population_dir = (dir / "missing").string();
    CHECK_THROWS_AS(cmd_evolve(bad, out), UsageError);
}

// ---------------------------------------------------------------------------
// ratio
// ---------------------------------------------------------------------------

TEST_CASE("ratio scores an instance file and writes a parseable report") {
    const auto dir = g_root / "pipeline";
    RatioOptions opt;
    opt.instance = (dir / "pop" / "instance_000.json").string();
    opt.solver_evals = 60;
    opt.runs = 3;
    opt.seed = 4;
    opt.output = (dir / "ratio.json").string();

    std::ostringstream out;
    cmd_ratio(opt, out);
    CHECK(out.str().find("R':") != std::string::npos);
    CHECK(out.str().find("mean ratio:") != std::string::npos);

    const auto rep = ratio_report_from_json(slurp(dir / "ratio.json"));
    CHECK(rep.ratios.size() == 3);

    auto bad = opt;
    bad.runs = 1;
    CHECK_THROWS_AS(cmd_ratio(bad, out), UsageError);
    bad = opt;
    bad.instance = (dir / "nope.json").string();
    CHECK_THROWS_AS(cmd_ratio(bad, out), UsageError);
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

TEST_CASE("report recomputes features and emits summary and box CSVs") {
    const auto dir = g_root / "pipeline";
    ReportOptions opt;
    opt.population_dirs = {(dir / "pop").string(), (dir / "pop_evolved").string()};
    opt.summary_out = (dir / "summary.csv").string();
    opt.box_out = (dir / "box.csv").string();

    std::ostringstream out;
    cmd_report(opt, out);

    const auto summary = slurp(dir / "summary.csv");
    CHECK(summary.rfind("set,feature,members,average,std,min,max,set_diversity\n", 0) == 0);
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);

    const auto box = slurp(dir / "box.csv");
    CHECK(box.rfind("set,feature,min,q1,median,q3,max\n", 0) == 0);

    // the first data row describes the initial population; cross-check its
    // average against a direct recomputation from the stored instances
    const auto cp = load_checkpoint(opt.population_dirs[0]);
    std::vector<double> feats;
    for (const auto& m : cp.population.members)
        feats.push_back(feature(m.instance, cp.population.feature_kind));
    const double avg = stats::mean(feats);

    const auto row_start = summary.find('\n') + 1;
    const auto row = summary.substr(row_start, summary.find('\n', row_start) - row_start);
    std::vector<std::string> fields;
    std::istringstream split(row);
    for (std::string field; std::getline(split, field, ',');) fields.push_back(field);
    REQUIRE(fields.size() == 8);
    CHECK(fields[1] == "ft1");
    CHECK(fields[2] == "3");
    CHECK(std::stod(fields[3]) == avg);
    CHECK(std::stod(fields[7]) == cp.population.set_diversity());

    ReportOptions none;
    CHECK_THROWS_AS(cmd_report(none, out), UsageError);
}
