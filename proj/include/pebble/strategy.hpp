#pragma once

#include <pebble/graph.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pebble {

using Rational = mpq_class;
using Integer = mpz_class;

/// Weights that admit no witnessing tree. Names the first vertex the root
/// cannot reach.
class InvalidStrategy : public Error
{
public:
    InvalidStrategy(const std::string & message, int vertex) : Error(message), _vertex(vertex) {}
    auto vertex() const -> int { return _vertex; }

private:
    int _vertex;
};

/// Root plus nonnegative weights, with a parent map witnessing the tree.
struct Strategy
{
    int root = 0;
    std::vector<Rational> weights;
    /// parent[v] for every support vertex, -1 elsewhere (including the root).
    std::vector<int> parent;
    bool basic = false;

    auto rhs() const -> Rational;
    auto support() const -> std::vector<int>;
    /// Edge distance from the root inside the witnessing tree; -1 off the tree.
    auto depths() const -> std::vector<int>;
    auto depth() const -> int;
    /// Support vertices whose parent is the root.
    auto root_children() const -> std::vector<int>;
};

/// Checks the weights and builds the parent map by BFS over the relation
/// u -> v for edges uv with u the root or w(u) >= 2 w(v).
auto validate_strategy(const Graph & g, int root, const std::vector<Rational> & weights) -> Strategy;

/// Exists a tree with w(parent) = 2 w(child) off the root.
auto is_basic(const Graph & g, int root, const std::vector<Rational> & weights) -> bool;

struct EnumerateOptions
{
    int max_depth = 2;
    bool single_branch = true;
    long long max_count = 1'000'000;
};

/// Every rooted subtree of depth <= max_depth, weighted 2^(depth of its
/// branch - depth(v)). Order is lexicographic DFS over sorted neighbour lists.
auto enumerate_basic(const Graph & g, int root, const EnumerateOptions & options = {}) -> std::vector<Strategy>;

/// Number of rooted subtrees enumerate_basic would emit, without materialising them.
auto count_basic(const Graph & g, int root, const EnumerateOptions & options = {}) -> long long;

/// Number of distinct weight vectors among the multi-branch trees (branches
/// normalised independently).
auto count_distinct_weightings(const Graph & g, int root, int max_depth, long long max_count = 1'000'000) -> long long;

/// Random single-branch subtrees grown by randomized BFS; duplicates dropped.
auto sample_strategies(const Graph & g, int root, int count, int max_depth, std::uint64_t seed) -> std::vector<Strategy>;

/// For each root child, the single-branch basic strategy of depth <= max_depth
/// maximising w.C - w(T), kept when that is positive. Exact search over layered
/// subtrees; throws ScaleGuardError past max_nodes search nodes.
auto most_violated_basic(const Graph & g, int root, int max_depth, const std::vector<Rational> & config, long long max_nodes = 50'000'000) -> std::vector<Strategy>;

/// Basic strategy carried by a tree: weight 2^(branch depth - depth(v)).
auto basic_on_tree(const Graph & g, int root, const std::vector<int> & parent) -> Strategy;

struct Part
{
    Rational coefficient;
    Strategy strategy;
};

/// Writes s as a nonnegative combination of basic strategies on its own tree.
auto decompose_nonbasic(const Graph & g, const Strategy & s) -> std::vector<Part>;

/// The common column sum m when every non-root vertex gets the same positive total.
auto uniform_cover_check(const std::vector<Strategy> & strategies) -> std::optional<Rational>;

auto strategy_to_json(const Graph & g, const Strategy & s) -> std::string;
auto strategy_from_json(const Graph & g, std::string_view text) -> Strategy;

/// "p/q" or an integer (or a decimal such as "13.5").
auto parse_rational(std::string_view text) -> Rational;
auto format_rational(const Rational & q) -> std::string;

}
