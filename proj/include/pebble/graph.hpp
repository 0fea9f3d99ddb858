#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pebble {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Bad generator parameters, bad options, bad indices.
class ParameterError : public Error
{
public:
    using Error::Error;
};

/// Malformed input text (graphs, configurations, certificates).
class ParseError : public Error
{
public:
    using Error::Error;
};

/// Graph invariants violated at construction (loops, asymmetry, disconnection).
class GraphError : public Error
{
public:
    using Error::Error;
};

/// A size or count guard was exceeded. Never silently truncated.
class ScaleGuardError : public Error
{
public:
    using Error::Error;
};

struct VertexId
{
    int index = 0;

    constexpr auto operator<=>(const VertexId &) const = default;
};

using Edge = std::pair<int, int>;

/// Immutable undirected simple connected graph with vertex labels.
///
/// Vertices are indexed 0..n-1; neighbour lists are kept sorted so that every
/// traversal built on top of them is deterministic.
class Graph
{
public:
    Graph() = default;

    /// Throws GraphError on loops, repeated edges, out-of-range endpoints,
    /// duplicate labels or a disconnected result.
    Graph(std::vector<std::string> labels, const std::vector<Edge> & edges);

    /// Default labels "v1".."vn".
    static auto with_default_labels(int n, const std::vector<Edge> & edges) -> Graph;

    auto order() const -> int { return static_cast<int>(_labels.size()); }
    auto size() const -> int { return _edge_count; }

    auto neighbors(int v) const -> std::span<const int> { return _adjacency[v]; }
    auto degree(int v) const -> int { return static_cast<int>(_adjacency[v].size()); }
    auto adjacent(int u, int v) const -> bool;

    auto label(int v) const -> const std::string & { return _labels[v]; }
    auto labels() const -> const std::vector<std::string> & { return _labels; }

    /// Index of the vertex with the given label; ParameterError when absent.
    auto index_of(std::string_view label) const -> int;
    auto find(std::string_view label) const -> int;

    /// Edges (u, v) with u < v in lexicographic order.
    auto edges() const -> std::vector<Edge>;

    auto check_vertex(int v) const -> void;

    friend auto operator==(const Graph & a, const Graph & b) -> bool
    {
        return a._labels == b._labels && a._adjacency == b._adjacency;
    }

private:
    std::vector<std::string> _labels;
    std::vector<std::vector<int>> _adjacency;
    int _edge_count = 0;
};

auto default_labels(int n) -> std::vector<std::string>;

// Distances.

inline constexpr int unreachable = -1;

auto bfs_distances(const Graph & g, int source) -> std::vector<int>;
auto distance_matrix(const Graph & g) -> std::vector<std::vector<int>>;
auto eccentricity(const Graph & g, int v) -> int;
auto diameter(const Graph & g) -> int;
auto is_tree(const Graph & g) -> bool;

// Constructions.

/// G box H: (u,x)~(v,x) for u~v in G and (u,x)~(u,y) for x~y in H.
/// Vertex (a,b) has index a*|H|+b and label "(a,b)".
auto cartesian_product(const Graph & g, const Graph & h) -> Graph;

/// Same vertex set, uv an edge iff 1 <= dist(u,v) <= k.
auto graph_power(const Graph & g, int k) -> Graph;

/// Subgraph on the given vertex subset (must be connected); labels kept.
auto induced_subgraph(const Graph & g, std::span<const int> vertices) -> Graph;

// Named generators. Every generator labels vertices "v1".."vn" unless noted.

namespace gen {
    auto path(int n) -> Graph;
    auto cycle(int n) -> Graph;
    /// K_{1,leaves}; the centre is v1.
    auto star(int leaves) -> Graph;
    auto complete(int n) -> Graph;
    /// Q^d; vertex index is the bitmask of the subset, label v(index+1).
    auto cube(int d) -> Graph;
    auto petersen() -> Graph;
    auto lemke() -> Graph;
    /// P_{m,d}; labels "u", "v<i>" and "v<i>,<X>" for binary X.
    auto generalized_petersen(int m, int d) -> Graph;
    /// C(p) for an odd prime p; labels "(i,j)".
    auto coxeter(int p) -> Graph;
    /// Cayley graph of S_m under adjacent transpositions; labels are one-line words.
    auto bruhat(int m) -> Graph;
    auto r15() -> Graph;
    auto r20() -> Graph;
    /// G(n,p) conditioned on connectivity by deterministic resampling.
    auto random_connected(int n, double p, std::uint64_t seed) -> Graph;

    /// Parse "petersen", "cycle:7", "gp:5,2", "random:8,0.4,17", "lemke2", ...
    auto from_spec(std::string_view spec) -> Graph;
}

// Text and JSON I/O.

/// Accepts "label: a,b,c" lines (1-based integer labels become v1..vn) and the
/// bracketed list form "([2,4], [1,3], ...)". '#' starts a comment.
auto parse_graph_text(std::string_view text) -> Graph;
auto emit_graph_text(const Graph & g) -> std::string;

/// {"vertices":[...], "edges":[[i,j],...]} with 0-based indices.
auto parse_graph_json(std::string_view text) -> Graph;
auto emit_graph_json(const Graph & g) -> std::string;

/// Dispatches on the first non-space character ('{' means JSON).
auto parse_graph(std::string_view text) -> Graph;

auto load_graph_file(const std::string & path) -> Graph;

}
