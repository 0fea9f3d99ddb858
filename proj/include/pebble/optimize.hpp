#pragma once

#include <pebble/certificate.hpp>
#include <pebble/strategy.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pebble {

/// Some vertex carries zero weight in every strategy, so the LP is unbounded.
class UncoveredVertices : public Error
{
public:
    UncoveredVertices(const std::string & message, std::vector<int> vertices) : Error(message), _vertices(std::move(vertices)) {}
    auto vertices() const -> const std::vector<int> & { return _vertices; }

private:
    std::vector<int> _vertices;
};

/// max sum_{v != r} C(v) subject to w_i . C <= w_i(T) for each strategy i, C >= 0.
struct LinearProgram
{
    int root = 0;
    std::vector<std::string> labels;
    std::vector<Strategy> strategies;

    auto order() const -> int { return static_cast<int>(labels.size()); }
};

auto build_lp(const Graph & g, int root, std::vector<Strategy> strategies) -> LinearProgram;

struct SolveStats
{
    long long strategies = 0;
    long long pivots = 0;
    long long nodes = 0;
    long long generated = 0;
    double seconds = 0;
};

struct BoundReport
{
    int root = 0;
    std::vector<std::string> labels;
    /// Fractional optimum.
    Rational z_frac;
    /// Integer optimum when the branch-and-bound ran to completion.
    std::optional<Integer> z_int;
    /// floor(z_frac) + 1, or z_int + 1 for an exact integer solve.
    Integer bound;
    bool exact = true;
    /// Optimal fractional configuration.
    std::vector<Rational> primal;
    /// Indices into the LP rows with positive dual value, and those values.
    std::vector<int> used;
    std::vector<Rational> multipliers;
    Certificate certificate;
    SolveStats stats;
};

/// Receives the current optimal configuration and returns strategies whose
/// constraint it violates; an empty result ends column generation.
using ColumnGenerator = std::function<std::vector<Strategy>(const std::vector<Rational> &)>;

/// Exact revised simplex on the dual: min sum y_i w_i(T) s.t. sum y_i w_i(v) >= 1 for v != r, y >= 0.
/// Dantzig pricing with Bland's rule after a run of degenerate pivots.
auto solve_fractional(const LinearProgram & lp, const ColumnGenerator & generate = {}) -> BoundReport;

/// Branch and bound on the fractional variable with the largest fractional
/// part, ties to the lowest vertex index.
auto solve_integer(const LinearProgram & lp, long long node_limit = 100000) -> BoundReport;

struct PipelineOptions
{
    int depth = 2;
    bool single_branch = true;
    /// Sampled strategies instead of full enumeration when > 0.
    int sample = 0;
    std::uint64_t seed = 0;
    long long max_strategies = 100'000;
    bool ilp = false;
    long long node_limit = 100000;
    /// When full enumeration passes max_strategies, start from paths and depth <= 2
    /// trees and add the most violated strategies until none is violated.
    bool lazy = true;
};

/// Enumerate (or sample, or generate lazily), solve, and re-verify the extracted certificate.
auto bound_pipeline(const Graph & g, int root, const PipelineOptions & options = {}) -> BoundReport;

auto bound_report_json(const Graph & g, const BoundReport & report) -> std::string;

}
