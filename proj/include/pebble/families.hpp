#pragma once

#include <pebble/certificate.hpp>
#include <pebble/optimize.hpp>

#include <map>
#include <string>
#include <vector>

namespace pebble {

/// Edge-disjoint paths directed toward the root, longest first.
struct PathPartition
{
    /// Each path lists its vertices from the far end down to where it attaches.
    std::vector<std::vector<int>> paths;

    auto lengths() const -> std::vector<int>;
};

struct TreePebbling
{
    Integer pi;
    PathPartition partition;
};

/// pi(T, r) = sum 2^{e_P} - |P| + 1 over a maximum path partition, built by
/// peeling the longest root-directed path (ties to the smallest vertex index).
auto tree_pebbling_number(const Graph & tree, int root) -> TreePebbling;
auto maximum_path_partition(const Graph & tree, int root) -> PathPartition;

/// 2^k for C_{2k}; 2 floor(2^{k+1}/3) + 1 for C_{2k+1}.
auto cycle_pebbling_number(int n) -> Integer;

/// Two basic paths from vertex 0, one in each direction: length k each for
/// C_{2k}, length k+1 each for C_{2k+1}.
auto cycle_strategies(int n) -> std::vector<Strategy>;

enum class Pm2Root
{
    u,
    v,
    w
};

/// Strategies on P_{m,2} for root u, v0 or "v0,0" with unit multipliers.
/// Root u: the m rotations of a 4/2/1 tree (uniform cover 4).
/// Root v: a nonbasic strategy around the root spoke plus three combined rotations.
/// Root w: the same scheme one level further out.
auto pm2_strategies(int m, Pm2Root root) -> std::vector<Strategy>;
auto pm2_root_vertex(const Graph & g, Pm2Root root) -> int;

struct CyclePowerConstruction
{
    int k = 0;
    /// n = (2k+1) 2^k + 3.
    int n = 0;
    /// Edges join vertices at cycle distance <= 2^k.
    int power = 0;
    Graph graph;
    /// Trees from the downsets of [1, v_k], on both halves of the cycle.
    std::vector<Strategy> strategies;
};

/// Root is vertex 0 of the cycle. 1 <= k <= 3.
auto cycle_power_strategies(int k) -> CyclePowerConstruction;

struct ExponentBounds
{
    /// Least e with n >= 2^diam(C_n^(e)).
    int lower = 0;
    /// Least e for which the LP pipeline proves pi(C_n^(e)) <= n.
    int upper = 0;
};

/// n <= 40. depth is the strategy depth handed to the pipeline.
auto pebbling_exponent_bounds(int n, int depth = 0) -> ExponentBounds;

/// 1 + sum_{k<d} max(C(d,k), 2^k).
auto cube_bound(int d) -> Integer;

/// One 4/2/1 tree per neighbour of the root, summing to weight 4 everywhere.
auto petersen_certificate(int root = 0) -> Certificate;

/// LP-derived certificate per root label.
auto lemke_certificates() -> std::map<std::string, Certificate>;

}
