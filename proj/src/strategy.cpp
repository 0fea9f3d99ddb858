#include <pebble/strategy.hpp>

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

namespace pebble {

auto Strategy::rhs() const -> Rational
{
    Rational total = 0;
    for (int v = 0; v < static_cast<int>(weights.size()); ++v)
        if (v != root)
            total += weights[v];
    return total;
}

auto Strategy::support() const -> std::vector<int>
{
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(weights.size()); ++v)
        if (v != root && sgn(weights[v]) > 0)
            out.push_back(v);
    return out;
}

auto Strategy::depths() const -> std::vector<int>
{
    const int n = static_cast<int>(weights.size());
    std::vector<int> depth(n, -1);
    depth[root] = 0;
    std::function<int(int)> resolve = [&](int v) -> int {
        if (depth[v] >= 0)
            return depth[v];
        if (parent[v] < 0)
            return -1;
        int d = resolve(parent[v]);
        return depth[v] = (d < 0 ? -1 : d + 1);
    };
    for (int v = 0; v < n; ++v)
        resolve(v);
    return depth;
}

auto Strategy::depth() const -> int
{
    auto d = depths();
    return *std::max_element(d.begin(), d.end());
}

auto Strategy::root_children() const -> std::vector<int>
{
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(parent.size()); ++v)
        if (parent[v] == root)
            out.push_back(v);
    return out;
}

namespace {

    auto check_weights(const Graph & g, int root, const std::vector<Rational> & weights) -> void
    {
        g.check_vertex(root);
        if (static_cast<int>(weights.size()) != g.order())
            throw ParameterError("weight vector has " + std::to_string(weights.size()) + " entries for a graph of order " + std::to_string(g.order()));
        if (sgn(weights[root]) != 0)
            throw InvalidStrategy("root " + g.label(root) + " has nonzero weight", root);
        bool any = false;
        for (int v = 0; v < g.order(); ++v) {
            if (sgn(weights[v]) < 0)
                throw InvalidStrategy("negative weight on " + g.label(v), v);
            any = any || sgn(weights[v]) > 0;
        }
        if (! any)
            throw InvalidStrategy("all weights are zero", root);
    }

    /// BFS parent map over the relation; -1 in the first slot of the pair marks failure.
    auto reach(const Graph & g, int root, const std::vector<Rational> & w, bool exact) -> std::pair<std::vector<int>, int>
    {
        std::vector<int> parent(g.order(), -1);
        std::vector<bool> seen(g.order(), false);
        seen[root] = true;
        std::deque<int> queue{root};
        while (! queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : g.neighbors(u)) {
                if (seen[v] || sgn(w[v]) <= 0)
                    continue;
                bool ok = u == root || (exact ? w[u] == 2 * w[v] : w[u] >= 2 * w[v]);
                if (ok) {
                    seen[v] = true;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        for (int v = 0; v < g.order(); ++v)
            if (sgn(w[v]) > 0 && ! seen[v])
                return {parent, v};
        return {parent, -1};
    }
}

auto validate_strategy(const Graph & g, int root, const std::vector<Rational> & weights) -> Strategy
{
    check_weights(g, root, weights);
    auto [exact_parent, exact_fail] = reach(g, root, weights, true);
    if (exact_fail < 0)
        return Strategy{root, weights, exact_parent, true};

    auto [parent, fail] = reach(g, root, weights, false);
    if (fail >= 0)
        throw InvalidStrategy("vertex " + g.label(fail) + " has no neighbour of at least twice its weight connected to the root", fail);
    return Strategy{root, weights, parent, false};
}

auto is_basic(const Graph & g, int root, const std::vector<Rational> & weights) -> bool
{
    check_weights(g, root, weights);
    return reach(g, root, weights, true).second < 0;
}

namespace {

    // Layered subtrees: layer k holds the tree vertices at depth k, each with a
    // neighbour in layer k-1. The weight of a basic strategy depends only on the layer.
    class LayerSearch
    {
    public:
        LayerSearch(const Graph & g, int root, int depth, std::vector<Integer> profit, long long max_nodes) :
            _g(g), _root(root), _depth(depth), _profit(std::move(profit)), _max_nodes(max_nodes),
            _used(g.order(), 0), _parent(g.order(), -1), _layer_weight(depth + 1)
        {
            for (int k = 1; k <= depth; ++k)
                mpz_ui_pow_ui(_layer_weight[k].get_mpz_t(), 2, depth - k);
        }

        auto best_under(int child) -> std::optional<std::vector<int>>
        {
            std::fill(_used.begin(), _used.end(), 0);
            std::fill(_parent.begin(), _parent.end(), -1);
            _used[_root] = _used[child] = 1;
            _parent[child] = _root;
            _best = 0;
            _best_parent.reset();
            _positive = 0;
            for (int v = 0; v < _g.order(); ++v)
                if (! _used[v] && sgn(_profit[v]) > 0)
                    _positive += _profit[v];
            search(1, _layer_weight[1] * _profit[child], {child});
            return _best_parent;
        }

    private:
        const Graph & _g;
        int _root;
        int _depth;
        std::vector<Integer> _profit;
        long long _max_nodes;
        long long _nodes = 0;
        std::vector<char> _used;
        std::vector<int> _parent;
        std::vector<Integer> _layer_weight;
        Integer _best;
        Integer _positive;
        std::optional<std::vector<int>> _best_parent;

        void tick()
        {
            if (++_nodes > _max_nodes)
                throw ScaleGuardError("strategy pricing exceeds " + std::to_string(_max_nodes) + " search nodes");
        }

        void record(const Integer & value)
        {
            if (value > _best) {
                _best = value;
                _best_parent = _parent;
            }
        }

        void search(int k, const Integer & value, const std::vector<int> & last)
        {
            tick();
            record(value);
            if (k == _depth)
                return;
            const Integer & a = _layer_weight[k + 1];
            if (value + a * _positive <= _best)
                return;

            std::vector<int> candidates;
            for (int u : last)
                for (int v : _g.neighbors(u))
                    if (! _used[v])
                        candidates.push_back(v);
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

            std::vector<int> layer;
            pick(k, candidates, 0, layer, value, last);
        }

        void pick(int k, const std::vector<int> & candidates, size_t i, std::vector<int> & layer, const Integer & value, const std::vector<int> & last)
        {
            const Integer & a = _layer_weight[k + 1];
            if (value + a * _positive <= _best)
                return;
            if (i == candidates.size()) {
                if (layer.empty())
                    return;
                for (int v : layer)
                    for (int u : last)
                        if (_g.adjacent(u, v)) {
                            _parent[v] = u;
                            break;
                        }
                search(k + 1, value, layer);
                for (int v : layer)
                    _parent[v] = -1;
                return;
            }
            tick();
            int v = candidates[i];
            bool last_layer = k + 1 == _depth;
            // in the deepest layer only profitable vertices are worth adding
            if (! last_layer || sgn(_profit[v]) > 0) {
                Integer gain = sgn(_profit[v]) > 0 ? _profit[v] : Integer(0);
                _used[v] = 1;
                _positive -= gain;
                layer.push_back(v);
                pick(k, candidates, i + 1, layer, value + a * _profit[v], last);
                layer.pop_back();
                _positive += gain;
                _used[v] = 0;
            }
            if (! last_layer || sgn(_profit[v]) <= 0)
                pick(k, candidates, i + 1, layer, value, last);
        }
    };
}

auto most_violated_basic(const Graph & g, int root, int max_depth, const std::vector<Rational> & config, long long max_nodes) -> std::vector<Strategy>
{
    g.check_vertex(root);
    if (max_depth < 1)
        throw ParameterError("strategy depth must be >= 1");
    if (static_cast<int>(config.size()) != g.order())
        throw ParameterError("configuration size does not match the graph order");

    Integer scale = 1;
    for (auto & c : config)
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> profit(g.order(), 0);
    for (int v = 0; v < g.order(); ++v)
        if (v != root) {
            Rational p = (config[v] - 1) * scale;
            profit[v] = p.get_num();
        }

    LayerSearch search(g, root, max_depth, std::move(profit), max_nodes);
    std::vector<Strategy> out;
    for (int c : g.neighbors(root))
        if (auto parent = search.best_under(c))
            out.push_back(basic_on_tree(g, root, *parent));
    return out;
}

auto basic_on_tree(const Graph & g, int root, const std::vector<int> & parent) -> Strategy
{
    const int n = g.order();
    Strategy s{root, std::vector<Rational>(n, 0), parent, true};
    auto depth = s.depths();

    std::vector<int> branch(n, -1);
    for (int v = 0; v < n; ++v) {
        if (v == root || depth[v] < 0)
            continue;
        if (! g.adjacent(v, parent[v]))
            throw ParameterError("parent map uses a non-edge at " + g.label(v));
        int top = v;
        while (parent[top] != root)
            top = parent[top];
        branch[v] = top;
    }
    std::map<int, int> branch_depth;
    for (int v = 0; v < n; ++v)
        if (branch[v] >= 0)
            branch_depth[branch[v]] = std::max(branch_depth[branch[v]], depth[v]);
    for (int v = 0; v < n; ++v)
        if (branch[v] >= 0) {
            mpz_class w;
            mpz_ui_pow_ui(w.get_mpz_t(), 2, branch_depth[branch[v]] - depth[v]);
            s.weights[v] = w;
        }
    if (branch_depth.empty())
        throw ParameterError("parent map has no vertices below the root");
    return s;
}

namespace {

    /// Include/exclude enumeration of rooted subtrees. visit receives the
    /// parent map and returns false to stop.
    class SubtreeWalker
    {
    public:
        SubtreeWalker(const Graph & g, int root, int max_depth) :
            _g(g), _root(root), _max_depth(max_depth), _parent(g.order(), -1), _depth(g.order(), -1)
        {
            if (max_depth < 1)
                throw ParameterError("strategy depth must be >= 1");
            g.check_vertex(root);
            _depth[root] = 0;
        }

        auto run(bool single_branch, const std::function<bool(const std::vector<int> &, const std::vector<int> &)> & visit) -> void
        {
            _visit = &visit;
            _stopped = false;
            if (single_branch) {
                for (int c : _g.neighbors(_root)) {
                    add(c, _root);
                    std::vector<Edge> frontier;
                    extend(frontier, c);
                    walk(frontier, 0);
                    remove(c);
                    if (_stopped)
                        return;
                }
            }
            else {
                std::vector<Edge> frontier;
                extend(frontier, _root);
                walk(frontier, 0);
            }
        }

    private:
        auto add(int v, int u) -> void
        {
            _parent[v] = u;
            _depth[v] = _depth[u] + 1;
            ++_size;
        }

        auto remove(int v) -> void
        {
            _parent[v] = -1;
            _depth[v] = -1;
            --_size;
        }

        auto extend(std::vector<Edge> & frontier, int v) const -> void
        {
            if (_depth[v] >= _max_depth)
                return;
            for (int x : _g.neighbors(v))
                if (x != _root && _depth[x] < 0)
                    frontier.emplace_back(v, x);
        }

        auto walk(std::vector<Edge> & frontier, size_t i) -> void
        {
            if (_stopped)
                return;
            while (i < frontier.size() && _depth[frontier[i].second] >= 0)
                ++i;
            if (i == frontier.size()) {
                if (_size > 0 && ! (*_visit)(_parent, _depth))
                    _stopped = true;
                return;
            }
            auto [u, v] = frontier[i];
            add(v, u);
            size_t mark = frontier.size();
            extend(frontier, v);
            walk(frontier, i + 1);
            frontier.resize(mark);
            remove(v);
            walk(frontier, i + 1);
        }

        const Graph & _g;
        int _root;
        int _max_depth;
        std::vector<int> _parent;
        std::vector<int> _depth;
        int _size = 0;
        bool _stopped = false;
        const std::function<bool(const std::vector<int> &, const std::vector<int> &)> * _visit = nullptr;
    };

    auto guard_message(long long max_count) -> std::string
    {
        return "strategy enumeration exceeds the limit of " + std::to_string(max_count) + " strategies";
    }
}

auto enumerate_basic(const Graph & g, int root, const EnumerateOptions & options) -> std::vector<Strategy>
{
    std::vector<Strategy> out;
    SubtreeWalker walker(g, root, options.max_depth);
    bool overflow = false;
    walker.run(options.single_branch, [&](const std::vector<int> & parent, const std::vector<int> &) {
        if (static_cast<long long>(out.size()) >= options.max_count) {
            overflow = true;
            return false;
        }
        out.push_back(basic_on_tree(g, root, parent));
        return true;
    });
    if (overflow)
        throw ScaleGuardError(guard_message(options.max_count));
    return out;
}

auto count_basic(const Graph & g, int root, const EnumerateOptions & options) -> long long
{
    long long count = 0;
    SubtreeWalker walker(g, root, options.max_depth);
    walker.run(options.single_branch, [&](const std::vector<int> &, const std::vector<int> &) {
        return ++count <= options.max_count;
    });
    if (count > options.max_count)
        throw ScaleGuardError(guard_message(options.max_count));
    return count;
}

auto count_distinct_weightings(const Graph & g, int root, int max_depth, long long max_count) -> long long
{
    std::set<std::vector<int>> seen;
    long long trees = 0;
    SubtreeWalker walker(g, root, max_depth);
    walker.run(false, [&](const std::vector<int> & parent, const std::vector<int> & depth) {
        if (++trees > max_count)
            return false;
        // weights as exponents; -1 marks vertices off the tree
        std::vector<int> top(g.order(), -1), key(g.order(), -1);
        std::map<int, int> branch_depth;
        for (int v = 0; v < g.order(); ++v)
            if (v != root && depth[v] >= 0) {
                int t = v;
                while (parent[t] != root)
                    t = parent[t];
                top[v] = t;
                branch_depth[t] = std::max(branch_depth[t], depth[v]);
            }
        for (int v = 0; v < g.order(); ++v)
            if (top[v] >= 0)
                key[v] = branch_depth[top[v]] - depth[v];
        seen.insert(std::move(key));
        return true;
    });
    if (trees > max_count)
        throw ScaleGuardError(guard_message(max_count));
    return static_cast<long long>(seen.size());
}

auto sample_strategies(const Graph & g, int root, int count, int max_depth, std::uint64_t seed) -> std::vector<Strategy>
{
    g.check_vertex(root);
    if (count < 1)
        throw ParameterError("sample count must be >= 1");
    if (max_depth < 1)
        throw ParameterError("strategy depth must be >= 1");

    std::mt19937_64 rng(seed);
    auto root_nbrs = g.neighbors(root);
    std::set<std::vector<int>> seen;
    std::vector<Strategy> out;

    for (int attempt = 0; attempt < count; ++attempt) {
        std::vector<int> parent(g.order(), -1), depth(g.order(), -1);
        depth[root] = 0;
        int child = root_nbrs[rng() % root_nbrs.size()];
        parent[child] = root;
        depth[child] = 1;
        std::deque<int> queue{child};
        while (! queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            if (depth[u] >= max_depth)
                continue;
            std::vector<int> nbrs(g.neighbors(u).begin(), g.neighbors(u).end());
            std::shuffle(nbrs.begin(), nbrs.end(), rng);
            for (int x : nbrs)
                if (depth[x] < 0 && (rng() & 1)) {
                    parent[x] = u;
                    depth[x] = depth[u] + 1;
                    queue.push_back(x);
                }
        }
        if (seen.insert(parent).second)
            out.push_back(basic_on_tree(g, root, parent));
    }
    return out;
}

auto decompose_nonbasic(const Graph & g, const Strategy & s) -> std::vector<Part>
{
    if (s.basic)
        return {{Rational(1), s}};
    std::vector<Part> parts;
    auto remaining = s.weights;
    auto parent = s.parent;

    while (true) {
        std::vector<int> tree(g.order(), -1);
        bool any = false;
        for (int v = 0; v < g.order(); ++v)
            if (v != s.root && sgn(remaining[v]) > 0) {
                tree[v] = parent[v];
                any = true;
            }
        if (! any)
            break;

        auto basic = basic_on_tree(g, s.root, tree);
        std::optional<Rational> c;
        for (int v = 0; v < g.order(); ++v)
            if (sgn(basic.weights[v]) > 0) {
                Rational ratio = remaining[v] / basic.weights[v];
                if (! c || ratio < *c)
                    c = ratio;
            }
        for (int v = 0; v < g.order(); ++v)
            remaining[v] -= *c * basic.weights[v];
        parts.push_back({*c, std::move(basic)});
    }
    return parts;
}

auto uniform_cover_check(const std::vector<Strategy> & strategies) -> std::optional<Rational>
{
    if (strategies.empty())
        return std::nullopt;
    const int root = strategies.front().root;
    const size_t n = strategies.front().weights.size();
    std::vector<Rational> sums(n, 0);
    for (auto & s : strategies) {
        if (s.root != root)
            throw ParameterError("strategies in a uniform cover must share one root");
        if (s.weights.size() != n)
            throw ParameterError("strategies in a uniform cover must share one graph");
        for (size_t v = 0; v < n; ++v)
            sums[v] += s.weights[v];
    }
    std::optional<Rational> m;
    for (size_t v = 0; v < n; ++v) {
        if (static_cast<int>(v) == root)
            continue;
        if (! m)
            m = sums[v];
        else if (sums[v] != *m)
            return std::nullopt;
    }
    if (! m || sgn(*m) <= 0)
        return std::nullopt;
    return m;
}

auto parse_rational(std::string_view text) -> Rational
{
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    auto bad = [&] { return ParseError("not a rational number: '" + std::string(text) + "'"); };
    if (s.empty())
        throw bad();

    auto is_int = [](const std::string & t) {
        size_t i = (! t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        return i < t.size() && std::all_of(t.begin() + i, t.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    auto to_int = [&](std::string t) {
        if (! t.empty() && t[0] == '+')
            t.erase(0, 1);
        return mpz_class(t);
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        auto num = s.substr(0, slash), den = s.substr(slash + 1);
        if (! is_int(num) || ! is_int(den) || den.find('-') != std::string::npos)
            throw bad();
        mpz_class d = to_int(den);
        if (d == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational q(to_int(num), d);
        q.canonicalize();
        return q;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
        bool negative = ! whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+")
            whole += "0";
        if (! is_int(whole) || (! frac.empty() && ! is_int(frac)) || frac.find_first_of("+-") != std::string::npos)
            throw bad();
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(frac);
        Rational q(abs(to_int(whole)) * scale + f, scale);
        q.canonicalize();
        return negative ? Rational(-q) : q;
    }
    if (! is_int(s))
        throw bad();
    return Rational(to_int(s));
}

auto format_rational(const Rational & q) -> std::string
{
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

namespace {
    auto rational_to_json(const Rational & q) -> nlohmann::json
    {
        if (q.get_den() == 1 && q.get_num().fits_slong_p())
            return q.get_num().get_si();
        return q.get_str();
    }

    auto rational_from_json(const nlohmann::json & j) -> Rational
    {
        if (j.is_number_integer())
            return Rational(std::to_string(j.get<long long>()));
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number())
            return parse_rational(j.dump());
        throw ParseError("expected a rational, got " + j.dump());
    }
}

auto strategy_to_json(const Graph & g, const Strategy & s) -> std::string
{
    nlohmann::json weights = nlohmann::json::object();
    for (int v : s.support())
        weights[g.label(v)] = rational_to_json(s.weights[v]);
    nlohmann::ordered_json j;
    j["root"] = g.label(s.root);
    j["weights"] = weights;
    j["basic"] = s.basic;
    return j.dump();
}

auto strategy_from_json(const Graph & g, std::string_view text) -> Strategy
{
    try {
        auto j = nlohmann::json::parse(text);
        int root = g.index_of(j.at("root").get<std::string>());
        std::vector<Rational> weights(g.order(), 0);
        for (auto & [label, value] : j.at("weights").items())
            weights[g.index_of(label)] = rational_from_json(value);
        return validate_strategy(g, root, weights);
    }
    catch (const nlohmann::json::exception & e) {
        throw ParseError(std::string("strategy JSON: ") + e.what());
    }
}

}
