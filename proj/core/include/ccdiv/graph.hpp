#ifndef CCDIV_GRAPH_HPP
#define CCDIV_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ccdiv/solution.hpp"

namespace ccdiv {

// Undirected graph over nodes 0..node_count-1, stored as sorted adjacency
// lists with no self-loops and no duplicate edges. Immutable once built and
// safe to share between concurrent solver runs.
struct CoverageGraph {
    int node_count = 0;
    std::vector<std::vector<int>> adjacency;

    // Deduplicates, symmetrizes, and drops self-loops. Throws
    // ValidationError on an endpoint outside [0, n).
    static CoverageGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    // Unique edges as (i, j) with i < j, sorted lexicographically.
    std::vector<std::pair<int, int>> edge_list() const;

    std::size_t edge_count() const;
};

// Reads a Matrix Market coordinate file. The node count is the maximum of the
// declared dimensions; entries are treated as undirected edges, values are
// ignored, self-loops dropped, and symmetric duplicates merged.
CoverageGraph load_matrix_market(std::istream& in);
CoverageGraph load_matrix_market(const std::string& text);

// Coordinate-format writer; load_matrix_market reads the result back to an
// identical edge set.
std::string write_matrix_market(const CoverageGraph& g);

// G(n, p): every unordered pair is an edge independently with probability p.
CoverageGraph generate_random_graph(int n, double p, std::uint64_t seed);

// |V'(x) u N(V'(x))|: nodes selected by the solution or adjacent to one.
int coverage_count(const CoverageGraph& g, const Solution& x);

// Canonical JSON document {"edges": [[i,j],...], "n": n} with 0-based,
// lexicographically sorted edges.
std::string to_json(const CoverageGraph& g);
CoverageGraph graph_from_json(const std::string& text);

}  // namespace ccdiv

#endif
