#include <pebble/families.hpp>

#include <algorithm>
#include <set>

namespace pebble {

auto PathPartition::lengths() const -> std::vector<int>
{
    std::vector<int> out;
    for (auto & p : paths)
        out.push_back(static_cast<int>(p.size()) - 1);
    return out;
}

auto maximum_path_partition(const Graph & tree, int root) -> PathPartition
{
    tree.check_vertex(root);
    if (! is_tree(tree))
        throw GraphError("path partitions need a tree");
    const int n = tree.order();
    std::vector<int> parent(n, -1), depth(n, -1), order{root};
    depth[root] = 0;
    for (size_t head = 0; head < order.size(); ++head)
        for (int v : tree.neighbors(order[head]))
            if (depth[v] < 0) {
                depth[v] = depth[order[head]] + 1;
                parent[v] = order[head];
                order.push_back(v);
            }

    PathPartition out;
    std::vector<char> covered(n, 0);
    covered[root] = 1;
    int remaining = n - 1;
    while (remaining > 0) {
        int best = -1, best_length = -1;
        for (int v = 0; v < n; ++v) {
            if (covered[v])
                continue;
            int a = v;
            while (! covered[a])
                a = parent[a];
            int length = depth[v] - depth[a];
            if (length > best_length) {
                best = v;
                best_length = length;
            }
        }
        std::vector<int> path;
        for (int x = best; ! covered[x]; x = parent[x]) {
            path.push_back(x);
            covered[x] = 1;
            --remaining;
        }
        path.push_back(parent[path.back()]);
        out.paths.push_back(std::move(path));
    }
    return out;
}

auto tree_pebbling_number(const Graph & tree, int root) -> TreePebbling
{
    TreePebbling out{1, maximum_path_partition(tree, root)};
    for (int e : out.partition.lengths()) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
        out.pi += p - 1;
    }
    return out;
}

auto cycle_pebbling_number(int n) -> Integer
{
    if (n < 3)
        throw ParameterError("cycles need n >= 3");
    const int k = n / 2;
    Integer p;
    if (n % 2 == 0) {
        mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
        return p;
    }
    mpz_ui_pow_ui(p.get_mpz_t(), 2, k + 1);
    return 2 * Integer(p / 3) + 1;
}

auto cycle_strategies(int n) -> std::vector<Strategy>
{
    if (n < 3)
        throw ParameterError("cycles need n >= 3");
    auto g = gen::cycle(n);
    const int length = n % 2 == 0 ? n / 2 : n / 2 + 1;
    std::vector<int> forward(n, -1), backward(n, -1);
    for (int i = 1; i <= length; ++i) {
        forward[i] = i - 1;
        backward[(n - i) % n] = (n - i + 1) % n;
    }
    return {basic_on_tree(g, 0, forward), basic_on_tree(g, 0, backward)};
}

namespace {

    struct Pm2
    {
        const Graph & g;
        int m;

        auto spoke(int i) const -> int { return g.index_of("v" + std::to_string(i)); }
        auto leaf(int i, int b) const -> int { return g.index_of("v" + std::to_string(i) + "," + std::to_string(b)); }

        /// Neighbours of v_{i,b} off its own spoke.
        auto outer(int i, int b) const -> std::vector<int>
        {
            std::vector<int> out;
            for (int y : g.neighbors(leaf(i, b)))
                if (y != spoke(i))
                    out.push_back(y);
            return out;
        }

        /// Hangs the rotation T_i below `above`, skipping vertices already placed.
        void hang(std::vector<int> & parent, int root, int above, int i) const
        {
            auto place = [&](int v, int p) {
                if (v != root && parent[v] < 0)
                    parent[v] = p;
            };
            place(spoke(i), above);
            for (int b = 0; b < 2; ++b) {
                place(leaf(i, b), spoke(i));
                for (int y : outer(i, b))
                    place(y, leaf(i, b));
            }
        }
    };
}

auto pm2_root_vertex(const Graph & g, Pm2Root root) -> int
{
    switch (root) {
    case Pm2Root::u:
        return g.index_of("u");
    case Pm2Root::v:
        return g.index_of("v0");
    case Pm2Root::w:
        return g.index_of("v0,0");
    }
    throw ParameterError("unknown P_{m,2} root class");
}

auto pm2_strategies(int m, Pm2Root root_class) -> std::vector<Strategy>
{
    if (m < 4)
        throw ParameterError("P_{m,2} strategies need m >= 4");
    auto g = gen::generalized_petersen(m, 2);
    Pm2 p{g, m};
    const int n = g.order();
    const int u = g.index_of("u");
    const int root = pm2_root_vertex(g, root_class);
    std::vector<Strategy> out;

    if (root_class == Pm2Root::u) {
        for (int i = 0; i < m; ++i) {
            std::vector<int> parent(n, -1);
            p.hang(parent, root, u, i);
            out.push_back(basic_on_tree(g, root, parent));
        }
        return out;
    }

    std::vector<Rational> weights(n, 0);
    if (root_class == Pm2Root::v) {
        for (int b = 0; b < 2; ++b) {
            weights[p.leaf(0, b)] = 3;
            for (int y : p.outer(0, b))
                weights[y] = 1;
        }
    }
    else {
        weights[p.spoke(0)] = 6;
        weights[p.leaf(0, 1)] = 3;
        for (int y : p.outer(0, 1))
            weights[y] = 1;
        for (int y : p.outer(0, 0))
            weights[y] = 1;
    }
    out.push_back(validate_strategy(g, root, weights));

    for (int j = 0; j < 3; ++j) {
        std::vector<int> parent(n, -1);
        int above = root;
        if (root_class == Pm2Root::w) {
            parent[p.spoke(0)] = root;
            above = p.spoke(0);
        }
        parent[u] = above;
        for (int i = 1; i < m; ++i)
            if (i % 3 == j)
                p.hang(parent, root, u, i);
        out.push_back(basic_on_tree(g, root, parent));
    }
    return out;
}

auto cycle_power_strategies(int k) -> CyclePowerConstruction
{
    if (k < 1 || k > 3)
        throw ScaleGuardError("cycle power construction is limited to 1 <= k <= 3");
    const int words = 1 << k;

    // |U_i| for i = 1..k+2, and the clockwise offset of each block
    std::vector<int> size(k + 3, 0), offset(k + 3, 0);
    size[1] = size[k + 2] = words;
    for (int i = 2; i <= k + 1; ++i)
        size[i] = words - (1 << (k - i + 1));
    int position = 1;
    for (int i = 1; i <= k + 2; ++i) {
        offset[i] = position;
        position += size[i];
    }
    const int n = (2 * k + 1) * words + 3;
    if (2 * (offset[k + 2] - 1) + size[k + 2] + 1 != n)
        throw Error("cycle power block sizes are inconsistent");

    auto in_block = [&](int i, int word) {
        if (i == 1 || i == k + 2)
            return true;
        int prefix = word >> (k - i + 1);
        return prefix != (1 << (i - 1)) - 1;
    };
    auto ones = [](int count) { return (1 << count) - 1; };

    // covers[i][word] lists the words of block i+1 covered by [i, word]
    std::vector<std::vector<std::vector<int>>> covers(k + 2, std::vector<std::vector<int>>(words));
    for (int word = 0; word < words; ++word) {
        // relation 2: [1, a x] > [2, 0 a]
        covers[1][word].push_back(word >> 1);
        // relation 5 and 6
        if (word != ones(k))
            covers[k + 1][word].push_back(word);
        if (word == (ones(k) & ~1))
            covers[k + 1][word].push_back(ones(k));
    }
    for (int i = 2; i <= k; ++i) {
        const int tail = k - i;
        for (int word = 0; word < words; ++word) {
            if (! in_block(i, word))
                continue;
            int a = word >> (tail + 1);
            int c = (word >> 1) & ones(tail);
            // relation 3: [i, a c x] > [i+1, a b c] for a != 1^{i-1}
            if (a != ones(i - 1))
                for (int b = 0; b < 2; ++b)
                    covers[i][word].push_back((((a << 1) | b) << tail) | c);
            // relation 4: [i, 1^{i-2} 0 c x] > [i+1, 1^{i-1} 0 c]
            if (a == (ones(i - 1) & ~1))
                covers[i][word].push_back((((ones(i - 1) << 1) | 0) << tail) | c);
        }
    }

    CyclePowerConstruction out;
    out.k = k;
    out.n = n;
    out.power = words;
    out.graph = graph_power(gen::cycle(n), words);

    auto clockwise = [&](int i, int word) { return offset[i] + word; };
    for (int side = 0; side < 2; ++side) {
        auto place = [&](int i, int word) {
            int p = clockwise(i, word);
            return side == 0 ? p : (n - p) % n;
        };
        for (int top = 0; top < words; ++top) {
            std::vector<int> parent(n, -1);
            parent[place(1, top)] = 0;
            std::vector<int> level{top};
            for (int i = 1; i <= k + 1; ++i) {
                std::vector<int> next;
                for (int word : level)
                    for (int child : covers[i][word]) {
                        int v = place(i + 1, child);
                        if (parent[v] >= 0)
                            throw Error("cycle power downset is not a tree");
                        parent[v] = place(i, word);
                        next.push_back(child);
                    }
                level = std::move(next);
            }
            auto s = basic_on_tree(out.graph, 0, parent);
            validate_strategy(out.graph, 0, s.weights);
            out.strategies.push_back(std::move(s));
        }
    }
    return out;
}

auto pebbling_exponent_bounds(int n, int depth) -> ExponentBounds
{
    if (n < 3 || n > 40)
        throw ScaleGuardError("pebbling exponent bounds are limited to 3 <= n <= 40");
    ExponentBounds out;
    auto diam = [&](int e) { return (n / 2 + e - 1) / e; };
    for (int e = 1; e < n; ++e)
        if (diam(e) < 31 && n >= (1 << diam(e))) {
            out.lower = e;
            break;
        }
    for (int e = out.lower; e < n; ++e) {
        auto g = graph_power(gen::cycle(n), e);
        PipelineOptions options;
        options.depth = depth > 0 ? depth : std::min(n - 1, diam(e) + 2);
        if (bound_pipeline(g, 0, options).bound == n) {
            out.upper = e;
            break;
        }
    }
    return out;
}

auto cube_bound(int d) -> Integer
{
    if (d < 1)
        throw ParameterError("cube bound needs d >= 1");
    Integer total = 1;
    for (int k = 0; k < d; ++k) {
        Integer binomial, power;
        mpz_bin_uiui(binomial.get_mpz_t(), d, k);
        mpz_ui_pow_ui(power.get_mpz_t(), 2, k);
        total += std::max(binomial, power);
    }
    return total;
}

auto petersen_certificate(int root) -> Certificate
{
    auto g = gen::petersen();
    g.check_vertex(root);
    std::vector<Strategy> strategies;
    for (int c : g.neighbors(root)) {
        std::vector<int> parent(g.order(), -1);
        parent[c] = root;
        for (int x : g.neighbors(c))
            if (x != root)
                parent[x] = c;
        for (int x : g.neighbors(c)) {
            if (x == root)
                continue;
            for (int y : g.neighbors(x))
                if (y != root && parent[y] < 0 && ! g.adjacent(y, root))
                    parent[y] = x;
        }
        strategies.push_back(basic_on_tree(g, root, parent));
    }
    auto cert = make_certificate(g, root, strategies, std::vector<Rational>(strategies.size(), 1));
    cert.graph = "petersen";
    cert.claimed_bound = 10;
    return cert;
}

auto lemke_certificates() -> std::map<std::string, Certificate>
{
    auto g = gen::lemke();
    std::map<std::string, Certificate> out;
    for (int r = 0; r < g.order(); ++r) {
        PipelineOptions options;
        options.depth = g.order() - 1;
        auto report = bound_pipeline(g, r, options);
        auto cert = simplify_certificate(g, report.certificate);
        cert.graph = "lemke";
        cert.claimed_bound = verify_certificate(g, cert).bound;
        out.emplace(g.label(r), std::move(cert));
    }
    return out;
}

}
