#include <pebble/graph.hpp>

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>

namespace pebble::gen {

namespace {

    auto require(bool condition, const std::string & message) -> void
    {
        if (! condition)
            throw ParameterError(message);
    }

    auto from_one_based_lists(const std::vector<std::vector<int>> & lists) -> Graph
    {
        std::vector<Edge> edges;
        const int n = static_cast<int>(lists.size());
        for (int u = 0; u < n; ++u)
            for (int w : lists[u]) {
                int v = w - 1;
                if (v < 0 || v >= n)
                    throw GraphError("adjacency entry out of range");
                auto & back = lists[v];
                if (std::find(back.begin(), back.end(), u + 1) == back.end())
                    throw GraphError("asymmetric adjacency between v" + std::to_string(u + 1) + " and v" + std::to_string(w));
                if (u < v)
                    edges.emplace_back(u, v);
            }
        return Graph::with_default_labels(n, edges);
    }

    auto is_prime(int p) -> bool
    {
        if (p < 2)
            return false;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0)
                return false;
        return true;
    }

    auto binary_word(int value, int length) -> std::string
    {
        std::string s(length, '0');
        for (int b = 0; b < length; ++b)
            if (value >> (length - 1 - b) & 1)
                s[b] = '1';
        return s;
    }
}

auto path(int n) -> Graph
{
    require(n >= 1, "path needs n >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i)
        edges.emplace_back(i, i + 1);
    return Graph::with_default_labels(n, edges);
}

auto cycle(int n) -> Graph
{
    require(n >= 3, "cycle needs n >= 3");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    return Graph::with_default_labels(n, edges);
}

auto star(int leaves) -> Graph
{
    require(leaves >= 1, "star needs at least one leaf");
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i)
        edges.emplace_back(0, i);
    return Graph::with_default_labels(leaves + 1, edges);
}

auto complete(int n) -> Graph
{
    require(n >= 1, "complete graph needs n >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return Graph::with_default_labels(n, edges);
}

auto cube(int d) -> Graph
{
    require(d >= 0 && d <= 16, "cube dimension must be in [0, 16]");
    const int n = 1 << d;
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int b = 0; b < d; ++b)
            if (int v = u ^ (1 << b); u < v)
                edges.emplace_back(u, v);
    return Graph::with_default_labels(n, edges);
}

auto petersen() -> Graph
{
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(std::min(i, (i + 1) % 5), std::max(i, (i + 1) % 5));
        edges.emplace_back(i, i + 5);
        int a = 5 + i, b = 5 + (i + 2) % 5;
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    return Graph::with_default_labels(10, edges);
}

// Reconstructed from the structural facts it must satisfy: v1 has degree 2,
// v8 degree 4, diameter 3, v4 of eccentricity 2, v5/v6/v7 interchangeable, and
// deleting v4v8 makes v3 and v4 interchangeable.
auto lemke() -> Graph
{
    return from_one_based_lists({
        {2, 3},
        {1, 4},
        {1, 5, 6, 7},
        {2, 5, 6, 7, 8},
        {3, 4, 8},
        {3, 4, 8},
        {3, 4, 8},
        {4, 5, 6, 7},
    });
}

auto generalized_petersen(int m, int d) -> Graph
{
    require(m >= 3, "P_{m,d} needs m >= 3");
    require(d >= 2 && d <= 12, "P_{m,d} needs 2 <= d <= 12");

    // index layout: u = 0, then for each spoke i the words X by (length, value)
    const int per_spoke = (1 << d) - 1;
    auto index = [&](int i, int length, int value) {
        return 1 + i * per_spoke + ((1 << length) - 1) + value;
    };

    std::vector<std::string> labels{"u"};
    for (int i = 0; i < m; ++i)
        for (int length = 0; length < d; ++length)
            for (int value = 0; value < (1 << length); ++value)
                labels.push_back(length == 0 ? "v" + std::to_string(i) : "v" + std::to_string(i) + "," + binary_word(value, length));

    std::vector<Edge> edges;
    const int last = d - 1, words = 1 << last;
    for (int i = 0; i < m; ++i) {
        edges.emplace_back(0, index(i, 0, 0));
        for (int length = 1; length < d; ++length)
            for (int value = 0; value < (1 << length); ++value)
                edges.emplace_back(index(i, length - 1, value >> 1), index(i, length, value));
        for (int value = 0; value < words; ++value) {
            int a = index(i, last, value);
            int b = (i + 1 < m) ? index(i + 1, last, value) : index(0, last, (value + 1) % words);
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    return Graph(std::move(labels), edges);
}

auto coxeter(int p) -> Graph
{
    require(p >= 3 && p % 2 == 1 && is_prime(p), "C(p) needs an odd prime p");
    const int q = (p - 1) / 2;
    auto index = [&](int i, int j) { return i * p + ((j % p) + p) % p; };

    std::vector<std::string> labels;
    for (int i = 0; i <= q; ++i)
        for (int j = 0; j < p; ++j)
            labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");

    std::vector<Edge> edges;
    for (int i = 1; i <= q; ++i)
        for (int j = 0; j < p; ++j) {
            int a = index(i, j), b = index(i, j + i);
            edges.emplace_back(std::min(a, b), std::max(a, b));
            edges.emplace_back(index(0, j), index(i, j));
        }
    return Graph(std::move(labels), edges);
}

auto bruhat(int m) -> Graph
{
    require(m >= 1 && m <= 7, "Bruhat graph order must be in [1, 7]");
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<int>> perms;
    do
        perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    auto index_of = [&](const std::vector<int> & p) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
    };

    std::vector<std::string> labels;
    std::vector<Edge> edges;
    for (int a = 0; a < static_cast<int>(perms.size()); ++a) {
        std::string word;
        for (int x : perms[a])
            word += std::to_string(x);
        labels.push_back(word);
        for (int pos = 0; pos + 1 < m; ++pos) {
            auto swapped = perms[a];
            std::swap(swapped[pos], swapped[pos + 1]);
            if (int b = index_of(swapped); a < b)
                edges.emplace_back(a, b);
        }
    }
    return Graph(std::move(labels), edges);
}

auto r15() -> Graph
{
    return from_one_based_lists({
        {2, 4, 5, 6, 12, 13},
        {1, 3, 4, 8, 11, 12, 14},
        {2, 4, 6, 7},
        {1, 2, 3, 5, 7, 9, 14},
        {1, 4, 6, 8, 11, 15},
        {1, 3, 5, 9, 13, 14},
        {3, 4, 11, 15},
        {2, 5, 10, 13, 14, 15},
        {4, 6, 10, 11},
        {8, 9, 11},
        {2, 5, 7, 9, 10, 12, 15},
        {1, 2, 11, 13},
        {1, 6, 8, 12},
        {2, 4, 6, 8},
        {5, 7, 8, 11},
    });
}

auto r20() -> Graph
{
    return from_one_based_lists({
        {6, 8, 11, 12, 14, 15, 16, 17},
        {4, 5, 6, 7, 8, 10, 15, 16, 17, 18, 19, 20},
        {4, 6, 8, 12, 14, 20},
        {2, 3, 5, 6, 8, 9, 12, 15, 18, 19},
        {2, 4, 7, 12, 14, 15, 16, 18, 20},
        {1, 2, 3, 4, 7, 8, 14, 15, 19},
        {2, 5, 6, 8, 11, 12, 13, 14, 15, 17, 18},
        {1, 2, 3, 4, 6, 7, 10, 11, 14, 15, 17},
        {4, 10, 11, 13, 14, 17, 19, 20},
        {2, 8, 9, 16, 18, 19, 20},
        {1, 7, 8, 9, 13, 14, 16, 18, 20},
        {1, 3, 4, 5, 7, 13, 16},
        {7, 9, 11, 12, 19, 20},
        {1, 3, 5, 6, 7, 8, 9, 11, 18},
        {1, 2, 4, 5, 6, 7, 8, 19},
        {1, 2, 5, 10, 11, 12, 18, 20},
        {1, 2, 7, 8, 9, 19},
        {2, 4, 5, 7, 10, 11, 14, 16, 20},
        {2, 4, 6, 9, 10, 13, 15, 17, 20},
        {2, 3, 5, 9, 10, 11, 13, 16, 18, 19},
    });
}

auto random_connected(int n, double p, std::uint64_t seed) -> Graph
{
    require(n >= 1, "random graph needs n >= 1");
    require(p > 0.0 && p <= 1.0, "edge probability must be in (0, 1]");
    std::mt19937_64 rng(seed);
    constexpr int max_attempts = 10000;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                if (x < p)
                    edges.emplace_back(u, v);
            }
        try {
            return Graph::with_default_labels(n, edges);
        }
        catch (const GraphError &) {
        }
    }
    throw ParameterError("no connected G(n,p) sample found; raise p");
}

namespace {
    auto parse_int(std::string_view s) -> long long
    {
        long long value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw ParameterError("expected an integer, got '" + std::string(s) + "'");
        return value;
    }

    auto split_params(std::string_view s) -> std::vector<std::string_view>
    {
        std::vector<std::string_view> out;
        if (s.empty())
            return out;
        size_t start = 0;
        while (true) {
            auto comma = s.find(',', start);
            out.push_back(s.substr(start, comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        return out;
    }
}

auto from_spec(std::string_view spec) -> Graph
{
    std::string_view name = spec, params;
    if (auto colon = spec.find(':'); colon != std::string_view::npos) {
        name = spec.substr(0, colon);
        params = spec.substr(colon + 1);
    }
    if (name == "file")
        return load_graph_file(std::string(params));

    auto args = split_params(params);
    auto want = [&](size_t count) {
        if (args.size() != count)
            throw ParameterError("generator '" + std::string(name) + "' takes " + std::to_string(count) + " parameter(s)");
    };
    auto arg = [&](size_t i) { return static_cast<int>(parse_int(args[i])); };

    if (name == "path") { want(1); return path(arg(0)); }
    if (name == "cycle") { want(1); return cycle(arg(0)); }
    if (name == "star") { want(1); return star(arg(0)); }
    if (name == "complete") { want(1); return complete(arg(0)); }
    if (name == "cube") { want(1); return cube(arg(0)); }
    if (name == "petersen") { want(0); return petersen(); }
    if (name == "lemke") { want(0); return lemke(); }
    if (name == "lemke2") { want(0); return cartesian_product(lemke(), lemke()); }
    if (name == "gp") { want(2); return generalized_petersen(arg(0), arg(1)); }
    if (name == "coxeter") { want(1); return coxeter(arg(0)); }
    if (name == "bruhat") { want(1); return bruhat(arg(0)); }
    if (name == "r15") { want(0); return r15(); }
    if (name == "r20") { want(0); return r20(); }
    if (name == "cycle-power") { want(2); return graph_power(cycle(arg(0)), arg(1)); }
    if (name == "random") {
        want(3);
        double p = 0;
        try {
            p = std::stod(std::string(args[1]));
        }
        catch (const std::exception &) {
            throw ParameterError("bad edge probability '" + std::string(args[1]) + "'");
        }
        return random_connected(arg(0), p, static_cast<std::uint64_t>(parse_int(args[2])));
    }
    throw ParameterError("unknown graph family '" + std::string(name) + "'");
}

}
