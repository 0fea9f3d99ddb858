#pragma once

#include <pebble/graph.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pebble {

/// A move that cannot be applied: non-edge or fewer than two pebbles.
class IllegalMove : public Error
{
public:
    using Error::Error;
};

/// Pebble counts indexed by vertex, with the total kept alongside.
class Configuration
{
public:
    Configuration() = default;
    explicit Configuration(int n) : _counts(n, 0) {}
    explicit Configuration(std::vector<int> counts);

    auto order() const -> int { return static_cast<int>(_counts.size()); }
    auto size() const -> int { return _total; }
    auto operator[](int v) const -> int { return _counts[v]; }
    auto counts() const -> const std::vector<int> & { return _counts; }

    auto set(int v, int count) -> void;
    auto add(int v, int delta) -> void;

    friend auto operator==(const Configuration & a, const Configuration & b) -> bool { return a._counts == b._counts; }
    friend auto operator<(const Configuration & a, const Configuration & b) -> bool { return a._counts < b._counts; }

private:
    std::vector<int> _counts;
    int _total = 0;
};

struct Move
{
    int from = 0;
    int to = 0;

    friend auto operator==(const Move &, const Move &) -> bool = default;
};

using MoveSequence = std::vector<Move>;

auto apply_move(const Graph & g, Configuration & c, Move m) -> void;
auto apply_moves(const Graph & g, Configuration c, const MoveSequence & moves) -> Configuration;

struct SearchLimits
{
    int max_order = 12;
    int max_config_size = 64;
};

/// Depth-first search over pebbling moves. Returns a replayable witness that
/// ends with a pebble on the root, or nullopt when the root is unreachable.
auto solve(const Graph & g, const Configuration & c, int root, const SearchLimits & limits = {}) -> std::optional<MoveSequence>;
auto is_solvable(const Graph & g, const Configuration & c, int root, const SearchLimits & limits = {}) -> bool;

struct ExactResult
{
    int pi = 0;
    /// Lexicographically smallest unsolvable configuration of size pi - 1 with no pebble on the root.
    Configuration witness;
    long long unsolvable_count = 0;
    long long searches = 0;
};

/// pi(G, r) by enumerating the down-closed family of root-unsolvable
/// configurations vertex by vertex.
auto pebbling_number_exact(const Graph & g, int root, const SearchLimits & limits = {}) -> ExactResult;

/// Calls visit on every unsolvable configuration with C(root) = 0, in
/// lexicographic order of the count vector. Stops early when visit returns false.
auto for_each_unsolvable(const Graph & g, int root, const std::function<bool(const Configuration &)> & visit, const SearchLimits & limits = {}) -> void;

/// pi(G) = max over roots.
auto pebbling_number(const Graph & g, const SearchLimits & limits = {}) -> int;

/// max(n, 2^diam(G)).
auto lower_bound(const Graph & g) -> long long;

auto configuration_to_json(const Configuration & c) -> std::string;
auto configuration_from_json(std::string_view text) -> Configuration;
auto moves_to_json(const Graph & g, const MoveSequence & moves) -> std::string;
auto moves_from_json(const Graph & g, std::string_view text) -> MoveSequence;

}
