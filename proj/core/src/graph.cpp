#include "ccdiv/graph.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ccdiv/errors.hpp"
#include "ccdiv/rng.hpp"

namespace ccdiv {

using nlohmann::json;

CoverageGraph CoverageGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw ValidationError("graph needs at least one node");
    CoverageGraph g;
    g.node_count = n;
    g.adjacency.resize(static_cast<std::size_t>(n));
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw ValidationError("edge endpoint (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ") outside [0, " + std::to_string(n) + ")");
        if (a == b) continue;
        g.adjacency[static_cast<std::size_t>(a)].push_back(b);
        g.adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& nbrs : g.adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return g;
}

std::vector<std::pair<int, int>> CoverageGraph::edge_list() const {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < node_count; ++i)
        for (int j : adjacency[static_cast<std::size_t>(i)])
            if (j > i) edges.emplace_back(i, j);
    return edges;
}

std::size_t CoverageGraph::edge_count() const {
    std::size_t deg = 0;
    for (const auto& nbrs : adjacency) deg += nbrs.size();
    return deg / 2;
}

static std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

CoverageGraph load_matrix_market(std::istream& in) {
    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) throw ParseError("matrix market: empty input");
    ++lineno;
    std::istringstream banner(line);
    std::string tag, object, format;
    banner >> tag >> object >> format;
    if (tag != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate")
        throw ParseError("matrix market: line 1: expected header \"%%MatrixMarket matrix coordinate\", got \"" +
                         line + "\"");

    long rows = 0, cols = 0, nnz = 0;
    bool have_size = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ss(line);
        if (!(ss >> rows >> cols >> nnz))
            throw ParseError("matrix market: line " + std::to_string(lineno) +
                             ": malformed size line \"" + line + "\"");
        have_size = true;
        break;
    }
    if (!have_size) throw ParseError("matrix market: missing size line");
    if (rows < 1 || cols < 1)
        throw ParseError("matrix market: line " + std::to_string(lineno) +
                         ": dimensions must be positive");

    const int n = static_cast<int>(std::max(rows, cols));
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(nnz));
    long seen = 0;
    while (seen < nnz && std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ss(line);
        long i = 0, j = 0;
        if (!(ss >> i >> j))
            throw ParseError("matrix market: line " + std::to_string(lineno) +
                             ": malformed entry \"" + line + "\"");
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw ValidationError("matrix market: line " + std::to_string(lineno) + ": entry (" +
                                  std::to_string(i) + ", " + std::to_string(j) +
                                  ") outside declared " + std::to_string(rows) + "x" +
                                  std::to_string(cols) + " bounds");
        edges.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1));
        ++seen;
    }
    if (seen < nnz)
        throw ParseError("matrix market: expected " + std::to_string(nnz) + " entries, found " +
                         std::to_string(seen));
    return CoverageGraph::from_edges(n, edges);
}

CoverageGraph load_matrix_market(const std::string& text) {
    std::istringstream in(text);
    return load_matrix_market(in);
}

std::string write_matrix_market(const CoverageGraph& g) {
    const auto edges = g.edge_list();
    std::ostringstream out;
    out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
    out << g.node_count << ' ' << g.node_count << ' ' << edges.size() << '\n';
    // Lower triangle (row > column), 1-based.
    for (const auto& [i, j] : edges) out << j + 1 << ' ' << i + 1 << '\n';
    return out.str();
}

CoverageGraph generate_random_graph(int n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_random_graph: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("generate_random_graph: p must be in [0, 1]");
    auto eng = rng::make_engine(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng::uniform01(eng) < p) edges.emplace_back(i, j);
    return CoverageGraph::from_edges(n, edges);
}

int coverage_count(const CoverageGraph& g, const Solution& x) {
    if (x.size() != g.node_count)
        throw std::invalid_argument("coverage_count: solution length " + std::to_string(x.size()) +
                                    " != node count " + std::to_string(g.node_count));
    std::vector<char> covered(static_cast<std::size_t>(g.node_count), 0);
    int count = 0;
    for (int i = 0; i < g.node_count; ++i) {
        if (!x.bits[static_cast<std::size_t>(i)]) continue;
        if (!covered[static_cast<std::size_t>(i)]) {
            covered[static_cast<std::size_t>(i)] = 1;
            ++count;
        }
        for (int j : g.adjacency[static_cast<std::size_t>(i)]) {
            if (!covered[static_cast<std::size_t>(j)]) {
                covered[static_cast<std::size_t>(j)] = 1;
                ++count;
            }
        }
    }
    return count;
}

std::string to_json(const CoverageGraph& g) {
    json doc;
    doc["n"] = g.node_count;
    auto edges = json::array();
    for (const auto& [i, j] : g.edge_list()) edges.push_back(json::array({i, j}));
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

CoverageGraph graph_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("graph document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges"))
        throw ParseError("graph document: expected object with \"n\" and \"edges\"");
    if (!doc["n"].is_number_integer())
        throw ParseError("graph document: \"n\" must be an integer");
    if (!doc["edges"].is_array())
        throw ParseError("graph document: \"edges\" must be an array");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ParseError("graph document: each edge must be a pair of integers");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return CoverageGraph::from_edges(doc["n"].get<int>(), edges);
}

}  // namespace ccdiv
