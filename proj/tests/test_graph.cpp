#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ccdiv/errors.hpp"
#include "ccdiv/graph.hpp"
#include "ccdiv/rng.hpp"

using namespace ccdiv;

TEST_CASE("from_edges deduplicates, symmetrizes, and drops self-loops") {
    const auto g = CoverageGraph::from_edges(4, {{0, 1}, {1, 0}, {2, 2}, {3, 1}, {1, 3}});
    CHECK(g.node_count == 4);
    CHECK(g.edge_count() == 2);
    CHECK(g.edge_list() == std::vector<std::pair<int, int>>{{0, 1}, {1, 3}});
    CHECK(g.adjacency[1] == std::vector<int>{0, 3});
    CHECK(g.adjacency[2].empty());
}

TEST_CASE("from_edges rejects bad input") {
    CHECK_THROWS_AS(CoverageGraph::from_edges(0, {}), ValidationError);
    CHECK_THROWS_AS(CoverageGraph::from_edges(3, {{0, 3}}), ValidationError);
    CHECK_THROWS_AS(CoverageGraph::from_edges(3, {{-1, 0}}), ValidationError);
}

// Direct recomputation of the covered set, independent of the library's
// stamp-array implementation.
static int oracle_coverage(const CoverageGraph& g, const Solution& x) {
    std::set<int> covered;
    for (int i = 0; i < g.node_count; ++i) {
        if (!x.bits[static_cast<std::size_t>(i)]) continue;
        covered.insert(i);
        for (int j : g.adjacency[static_cast<std::size_t>(i)]) covered.insert(j);
    }
    return static_cast<int>(covered.size());
}

TEST_CASE("coverage_count matches a set-based oracle on random graphs") {
    auto eng = rng::make_engine(31);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng::uniform_int(eng, 0, 18));
        const auto g = generate_random_graph(n, 0.3, rng::uniform_int(eng, 0, 1 << 20));
        Solution x(n);
        for (auto& b : x.bits) b = rng::uniform01(eng) < 0.4;
        CHECK(coverage_count(g, x) == oracle_coverage(g, x));
    }
}

TEST_CASE("coverage_count checks the solution dimension") {
    const auto g = generate_random_graph(5, 0.5, 1);
    Solution x(4);
    CHECK_THROWS_AS(coverage_count(g, x), std::invalid_argument);
}

TEST_CASE("random graph generation is seeded and respects edge probability") {
    const auto a = generate_random_graph(30, 0.2, 77);
    const auto b = generate_random_graph(30, 0.2, 77);
    const auto c = generate_random_graph(30, 0.2, 78);
    CHECK(a.edge_list() == b.edge_list());
    CHECK(a.edge_list() != c.edge_list());

    CHECK(generate_random_graph(20, 0.0, 5).edge_count() == 0);
    CHECK(generate_random_graph(20, 1.0, 5).edge_count() == 190);

    // 50 nodes, p=0.3: 1225 pairs, expect ~367 edges, sd ~16; allow 6 sd.
    const auto d = generate_random_graph(50, 0.3, 123);
    CHECK(d.edge_count() > 270);
    CHECK(d.edge_count() < 465);
}

TEST_CASE("matrix market round-trip preserves the edge set") {
    const auto g = generate_random_graph(12, 0.4, 9);
    const auto back = load_matrix_market(write_matrix_market(g));
    CHECK(back.node_count == g.node_count);
    CHECK(back.edge_list() == g.edge_list());
}

TEST_CASE("matrix market reader handles comments, case, and rectangles") {
    const std::string text =
        "%%MatrixMarket MATRIX Coordinate pattern general\n"
        "% a comment line\n"
        "\n"
        "3 5 2\n"
        "1 2\n"
        "3 4\n";
    const auto g = load_matrix_market(text);
    CHECK(g.node_count == 5);  // max of the two declared dimensions
    CHECK(g.edge_list() == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
}

TEST_CASE("matrix market reader merges symmetric duplicates and drops loops") {
    const std::string text =
        "%%MatrixMarket matrix coordinate real general\n"
        "4 4 4\n"
        "1 2 1.5\n"
        "2 1 2.5\n"
        "3 3 1.0\n"
        "4 1 0.5\n";
    const auto g = load_matrix_market(text);
    CHECK(g.edge_list() == std::vector<std::pair<int, int>>{{0, 1}, {0, 3}});
}

TEST_CASE("matrix market reader rejects malformed input") {
    CHECK_THROWS_AS(load_matrix_market("not a banner\n1 1 0\n"), ParseError);
    CHECK_THROWS_AS(load_matrix_market("%%MatrixMarket matrix array real general\n2 2\n"),
                    ParseError);
    // declared 2 entries, only 1 present
    CHECK_THROWS_AS(
        load_matrix_market("%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n"),
        ParseError);
    // entry outside the declared dimensions
    CHECK_THROWS_AS(
        load_matrix_market("%%MatrixMarket matrix coordinate pattern general\n3 3 1\n1 4\n"),
        ValidationError);
    CHECK_THROWS_AS(
        load_matrix_market("%%MatrixMarket matrix coordinate pattern general\n3 3 1\n0 2\n"),
        ValidationError);
}

TEST_CASE("graph JSON round-trip and error paths") {
    const auto g = generate_random_graph(8, 0.5, 21);
    const auto back = graph_from_json(to_json(g));
    CHECK(back.node_count == g.node_count);
    CHECK(back.edge_list() == g.edge_list());

    CHECK_THROWS_AS(graph_from_json("not json"), ParseError);
    CHECK_THROWS_AS(graph_from_json("{\"n\": 3}"), ParseError);
    CHECK_THROWS_AS(graph_from_json("{\"edges\": [[0,1]]}"), ParseError);
    CHECK_THROWS_AS(graph_from_json("{\"edges\": 5, \"n\": 3}"), ParseError);
}
