#include <pebble/graph.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace pebble {

Graph::Graph(std::vector<std::string> labels, const std::vector<Edge> & edges) :
    _labels(std::move(labels)),
    _adjacency(_labels.size())
{
    const int n = order();
    if (n == 0)
        throw GraphError("graph must have at least one vertex");

    std::set<std::string_view> seen_labels;
    for (auto & l : _labels)
        if (! seen_labels.insert(l).second)
            throw GraphError("duplicate vertex label '" + l + "'");

    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw GraphError("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
        if (u == v)
            throw GraphError("self-loop at vertex " + _labels[u]);
        _adjacency[u].push_back(v);
        _adjacency[v].push_back(u);
    }

    for (int v = 0; v < n; ++v) {
        auto & adj = _adjacency[v];
        std::sort(adj.begin(), adj.end());
        if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
            throw GraphError("repeated edge at vertex " + _labels[v]);
        _edge_count += static_cast<int>(adj.size());
    }
    _edge_count /= 2;

    auto dist = bfs_distances(*this, 0);
    for (int v = 0; v < n; ++v)
        if (dist[v] == unreachable)
            throw GraphError("graph is disconnected: " + _labels[v] + " unreachable from " + _labels[0]);
}

auto Graph::with_default_labels(int n, const std::vector<Edge> & edges) -> Graph
{
    return Graph(default_labels(n), edges);
}

auto Graph::adjacent(int u, int v) const -> bool
{
    auto & adj = _adjacency[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

auto Graph::find(std::string_view label) const -> int
{
    for (int v = 0; v < order(); ++v)
        if (_labels[v] == label)
            return v;
    return -1;
}

auto Graph::index_of(std::string_view label) const -> int
{
    int v = find(label);
    if (v < 0)
        throw ParameterError("no vertex labelled '" + std::string(label) + "'");
    return v;
}

auto Graph::edges() const -> std::vector<Edge>
{
    std::vector<Edge> result;
    result.reserve(_edge_count);
    for (int u = 0; u < order(); ++u)
        for (int v : _adjacency[u])
            if (u < v)
                result.emplace_back(u, v);
    return result;
}

auto Graph::check_vertex(int v) const -> void
{
    if (v < 0 || v >= order())
        throw ParameterError("vertex index " + std::to_string(v) + " out of range for graph of order " + std::to_string(order()));
}

auto default_labels(int n) -> std::vector<std::string>
{
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 1; i <= n; ++i)
        labels.push_back("v" + std::to_string(i));
    return labels;
}

auto bfs_distances(const Graph & g, int source) -> std::vector<int>
{
    std::vector<int> dist(g.order(), unreachable);
    std::deque<int> queue{source};
    dist[source] = 0;
    while (! queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : g.neighbors(u))
            if (dist[v] == unreachable) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

auto distance_matrix(const Graph & g) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> result;
    result.reserve(g.order());
    for (int v = 0; v < g.order(); ++v)
        result.push_back(bfs_distances(g, v));
    return result;
}

auto eccentricity(const Graph & g, int v) -> int
{
    g.check_vertex(v);
    auto dist = bfs_distances(g, v);
    return *std::max_element(dist.begin(), dist.end());
}

auto diameter(const Graph & g) -> int
{
    int result = 0;
    for (int v = 0; v < g.order(); ++v)
        result = std::max(result, eccentricity(g, v));
    return result;
}

auto is_tree(const Graph & g) -> bool
{
    return g.size() == g.order() - 1;
}

auto cartesian_product(const Graph & g, const Graph & h) -> Graph
{
    const int ng = g.order(), nh = h.order();
    std::vector<std::string> labels;
    labels.reserve(ng * nh);
    for (int a = 0; a < ng; ++a)
        for (int b = 0; b < nh; ++b)
            labels.push_back("(" + g.label(a) + "," + h.label(b) + ")");

    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        for (int x = 0; x < nh; ++x)
            edges.emplace_back(u * nh + x, v * nh + x);
    for (int u = 0; u < ng; ++u)
        for (auto [x, y] : h.edges())
            edges.emplace_back(u * nh + x, u * nh + y);

    return Graph(std::move(labels), edges);
}

auto graph_power(const Graph & g, int k) -> Graph
{
    if (k < 1)
        throw ParameterError("graph power exponent must be >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u < g.order(); ++u) {
        auto dist = bfs_distances(g, u);
        for (int v = u + 1; v < g.order(); ++v)
            if (dist[v] <= k)
                edges.emplace_back(u, v);
    }
    return Graph(g.labels(), edges);
}

auto induced_subgraph(const Graph & g, std::span<const int> vertices) -> Graph
{
    std::map<int, int> position;
    std::vector<std::string> labels;
    for (int v : vertices) {
        g.check_vertex(v);
        if (position.contains(v))
            throw ParameterError("repeated vertex in induced subgraph");
        position.emplace(v, static_cast<int>(labels.size()));
        labels.push_back(g.label(v));
    }
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
        auto pu = position.find(u), pv = position.find(v);
        if (pu != position.end() && pv != position.end())
            edges.emplace_back(pu->second, pv->second);
    }
    return Graph(std::move(labels), edges);
}

}
