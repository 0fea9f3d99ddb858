#include <pebble/pebbling.hpp>

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace pebble {

Configuration::Configuration(std::vector<int> counts) :
    _counts(std::move(counts))
{
    for (int x : _counts) {
        if (x < 0)
            throw ParameterError("configuration has a negative count");
        _total += x;
    }
}

auto Configuration::set(int v, int count) -> void
{
    if (count < 0)
        throw ParameterError("configuration has a negative count");
    _total += count - _counts[v];
    _counts[v] = count;
}

auto Configuration::add(int v, int delta) -> void
{
    set(v, _counts[v] + delta);
}

auto apply_move(const Graph & g, Configuration & c, Move m) -> void
{
    g.check_vertex(m.from);
    g.check_vertex(m.to);
    if (! g.adjacent(m.from, m.to))
        throw IllegalMove("no edge " + g.label(m.from) + "-" + g.label(m.to));
    if (c[m.from] < 2)
        throw IllegalMove("move " + g.label(m.from) + "->" + g.label(m.to) + " needs two pebbles on " + g.label(m.from));
    c.add(m.from, -2);
    c.add(m.to, 1);
}

auto apply_moves(const Graph & g, Configuration c, const MoveSequence & moves) -> Configuration
{
    if (c.order() != g.order())
        throw ParameterError("configuration order does not match the graph");
    for (auto m : moves)
        apply_move(g, c, m);
    return c;
}

namespace {

    using State = std::string;

    constexpr int max_count = 255;

    /// Memoised solvability search for one (graph, root) pair.
    class Solver
    {
    public:
        Solver(const Graph & g, int root, const SearchLimits & limits) :
            _g(g),
            _root(root),
            _limits(limits),
            _dist(bfs_distances(g, root))
        {
            g.check_vertex(root);
            if (g.order() > limits.max_order)
                throw ScaleGuardError("graph order " + std::to_string(g.order()) + " exceeds the exact-search limit " + std::to_string(limits.max_order));
            if (limits.max_config_size > max_count)
                throw ParameterError("configuration size limit cannot exceed " + std::to_string(max_count));

            _depth = *std::max_element(_dist.begin(), _dist.end());
            _potential.resize(g.order());
            for (int v = 0; v < g.order(); ++v)
                _potential[v] = std::uint64_t{1} << (_depth - _dist[v]);

            _order.resize(g.order());
            for (int u = 0; u < g.order(); ++u) {
                _order[u].assign(g.neighbors(u).begin(), g.neighbors(u).end());
                std::stable_sort(_order[u].begin(), _order[u].end(), [&](int a, int b) { return _dist[a] < _dist[b]; });
            }
        }

        auto solvable(const Configuration & c) -> bool
        {
            check_size(c);
            ++_searches;
            State s(c.order(), '\0');
            for (int v = 0; v < c.order(); ++v)
                s[v] = static_cast<char>(c[v]);
            return search(s);
        }

        auto witness(const Configuration & c) -> std::optional<MoveSequence>
        {
            if (! solvable(c))
                return std::nullopt;
            MoveSequence moves;
            State s(c.order(), '\0');
            for (int v = 0; v < c.order(); ++v)
                s[v] = static_cast<char>(c[v]);
            while (at(s, _root) == 0) {
                auto m = _solved.at(s);
                moves.push_back(m);
                s[m.from] = static_cast<char>(at(s, m.from) - 2);
                s[m.to] = static_cast<char>(at(s, m.to) + 1);
            }
            return moves;
        }

        auto check_size(const Configuration & c) const -> void
        {
            if (c.order() != _g.order())
                throw ParameterError("configuration order does not match the graph");
            if (c.size() > _limits.max_config_size)
                throw ScaleGuardError("configuration size " + std::to_string(c.size()) + " exceeds the limit " + std::to_string(_limits.max_config_size));
        }

        auto searches() const -> long long { return _searches; }

    private:
        static auto at(const State & s, int v) -> int { return static_cast<unsigned char>(s[v]); }

        auto search(State & s) -> bool
        {
            if (at(s, _root) > 0)
                return true;
            if (_unsolvable.contains(s))
                return false;
            if (_solved.contains(s))
                return true;

            for (int v : _g.neighbors(_root))
                if (at(s, v) >= 2) {
                    _solved.emplace(s, Move{v, _root});
                    return true;
                }

            std::uint64_t potential = 0;
            for (int v = 0; v < _g.order(); ++v)
                potential += _potential[v] * at(s, v);
            if (potential < (std::uint64_t{1} << _depth)) {
                _unsolvable.insert(s);
                return false;
            }

            // candidate sources nearest the root first
            std::vector<int> sources;
            for (int u = 0; u < _g.order(); ++u)
                if (at(s, u) >= 2)
                    sources.push_back(u);
            std::stable_sort(sources.begin(), sources.end(), [&](int a, int b) { return _dist[a] < _dist[b]; });

            for (int u : sources)
                for (int v : _order[u]) {
                    State next = s;
                    next[u] = static_cast<char>(at(s, u) - 2);
                    next[v] = static_cast<char>(at(s, v) + 1);
                    if (search(next)) {
                        _solved.emplace(s, Move{u, v});
                        return true;
                    }
                }

            _unsolvable.insert(s);
            return false;
        }

        const Graph & _g;
        int _root;
        SearchLimits _limits;
        std::vector<int> _dist;
        int _depth = 0;
        std::vector<std::uint64_t> _potential;
        std::vector<std::vector<int>> _order;
        std::unordered_set<State> _unsolvable;
        std::unordered_map<State, Move> _solved;
        long long _searches = 0;
    };

    auto enumerate_unsolvable(Solver & solver, const Graph & g, int root, const SearchLimits & limits,
        const std::function<bool(const Configuration &)> & visit) -> void
    {
        std::vector<int> others;
        for (int v = 0; v < g.order(); ++v)
            if (v != root)
                others.push_back(v);

        Configuration c(g.order());
        bool stop = false;

        // invariant: c (with zeros past position i) is unsolvable
        std::function<void(size_t)> recurse = [&](size_t i) {
            if (stop)
                return;
            if (i == others.size()) {
                if (! visit(c))
                    stop = true;
                return;
            }
            int v = others[i];
            for (int k = 0;; ++k) {
                if (k > 0) {
                    c.set(v, k);
                    if (c.size() > limits.max_config_size)
                        throw ScaleGuardError("an unsolvable configuration exceeds the size limit " + std::to_string(limits.max_config_size));
                    if (solver.solvable(c))
                        break;
                }
                recurse(i + 1);
                if (stop)
                    break;
            }
            c.set(v, 0);
        };
        recurse(0);
    }
}

auto solve(const Graph & g, const Configuration & c, int root, const SearchLimits & limits) -> std::optional<MoveSequence>
{
    Solver solver(g, root, limits);
    return solver.witness(c);
}

auto is_solvable(const Graph & g, const Configuration & c, int root, const SearchLimits & limits) -> bool
{
    Solver solver(g, root, limits);
    return solver.solvable(c);
}

auto for_each_unsolvable(const Graph & g, int root, const std::function<bool(const Configuration &)> & visit, const SearchLimits & limits) -> void
{
    Solver solver(g, root, limits);
    enumerate_unsolvable(solver, g, root, limits, visit);
}

auto pebbling_number_exact(const Graph & g, int root, const SearchLimits & limits) -> ExactResult
{
    Solver solver(g, root, limits);
    ExactResult result;
    int best = -1;
    enumerate_unsolvable(solver, g, root, limits, [&](const Configuration & c) {
        ++result.unsolvable_count;
        if (c.size() > best) {
            best = c.size();
            result.witness = c;
        }
        return true;
    });
    result.pi = best + 1;
    result.searches = solver.searches();
    return result;
}

auto pebbling_number(const Graph & g, const SearchLimits & limits) -> int
{
    int best = 0;
    for (int r = 0; r < g.order(); ++r)
        best = std::max(best, pebbling_number_exact(g, r, limits).pi);
    return best;
}

auto lower_bound(const Graph & g) -> long long
{
    int d = diameter(g);
    if (d >= 62)
        throw ScaleGuardError("diameter too large for a 64-bit lower bound");
    return std::max<long long>(g.order(), 1LL << d);
}

auto configuration_to_json(const Configuration & c) -> std::string
{
    return nlohmann::json{{"counts", c.counts()}}.dump();
}

auto configuration_from_json(std::string_view text) -> Configuration
{
    try {
        auto j = nlohmann::json::parse(text);
        return Configuration(j.at("counts").get<std::vector<int>>());
    }
    catch (const nlohmann::json::exception & e) {
        throw ParseError(std::string("configuration JSON: ") + e.what());
    }
}

auto moves_to_json(const Graph & g, const MoveSequence & moves) -> std::string
{
    auto j = nlohmann::json::array();
    for (auto m : moves)
        j.push_back({g.label(m.from), g.label(m.to)});
    return j.dump();
}

auto moves_from_json(const Graph & g, std::string_view text) -> MoveSequence
{
    try {
        MoveSequence moves;
        for (auto & pair : nlohmann::json::parse(text)) {
            auto labels = pair.get<std::vector<std::string>>();
            if (labels.size() != 2)
                throw ParseError("a move needs exactly two vertex labels");
            moves.push_back({g.index_of(labels[0]), g.index_of(labels[1])});
        }
        return moves;
    }
    catch (const nlohmann::json::exception & e) {
        throw ParseError(std::string("move JSON: ") + e.what());
    }
}

}
