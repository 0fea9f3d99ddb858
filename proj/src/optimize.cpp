#include <pebble/optimize.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <climits>

namespace pebble {

namespace {

    struct Column
    {
        /// (row, value) with rows indexing the non-root vertices.
        std::vector<std::pair<int, Integer>> entries;
        Integer cost;
    };

    enum class Status
    {
        optimal,
        infeasible,
        unbounded
    };

    struct DualSolution
    {
        Status status = Status::optimal;
        Rational objective;
        /// Simplex multipliers, one per row: the primal configuration.
        std::vector<Rational> pi;
        /// Value per structural column.
        std::vector<Rational> y;
        long long pivots = 0;
    };

    // min c.y  s.t.  A y >= 1, y >= 0, as A y - s + a = 1 with artificials a.
    // Column ids: j >= 0 structural, -1-i surplus of row i, -1-m-i artificial of row i.
    class DualSimplex
    {
    public:
        DualSimplex(int rows, const std::vector<Column> & columns) : _m(rows), _columns(columns) {}

        auto solve() -> DualSolution
        {
            _basis.resize(_m);
            _binv.assign(_m, std::vector<Rational>(_m, 0));
            _x.assign(_m, 1);
            for (int i = 0; i < _m; ++i) {
                _basis[i] = artificial(i);
                _binv[i][i] = 1;
            }

            DualSolution out;
            _phase = 1;
            auto status = iterate();
            out.pivots = _pivots;
            if (status != Status::optimal)
                throw Error("simplex phase one did not terminate at an optimum");
            Rational infeasibility = 0;
            for (int i = 0; i < _m; ++i)
                if (is_artificial(_basis[i]))
                    infeasibility += _x[i];
            if (sgn(infeasibility) > 0) {
                out.status = Status::infeasible;
                return out;
            }
            drive_out_artificials();

            _phase = 2;
            status = iterate();
            out.pivots = _pivots;
            out.status = status;
            if (status != Status::optimal)
                return out;

            out.pi = multipliers();
            out.y.assign(_columns.size(), 0);
            out.objective = 0;
            for (int i = 0; i < _m; ++i) {
                if (_basis[i] >= 0) {
                    out.y[_basis[i]] = _x[i];
                    out.objective += _x[i] * _columns[_basis[i]].cost;
                }
            }
            return out;
        }

    private:
        int _m;
        const std::vector<Column> & _columns;
        std::vector<int> _basis;
        std::vector<std::vector<Rational>> _binv;
        std::vector<Rational> _x;
        int _phase = 1;
        long long _pivots = 0;

        auto artificial(int row) const -> int { return -1 - _m - row; }
        auto is_artificial(int id) const -> bool { return id < -_m; }

        auto cost(int id) const -> Rational
        {
            if (_phase == 1)
                return is_artificial(id) ? 1 : 0;
            if (id >= 0)
                return Rational(_columns[id].cost);
            return 0;
        }

        // Bland order: structural first, then surplus, then artificial.
        auto order_key(int id) const -> long long
        {
            if (id >= 0)
                return id;
            return static_cast<long long>(INT_MAX) + (-1 - id);
        }

        auto multipliers() const -> std::vector<Rational>
        {
            std::vector<Rational> pi(_m, 0);
            for (int i = 0; i < _m; ++i) {
                Rational c = cost(_basis[i]);
                if (sgn(c) == 0)
                    continue;
                for (int k = 0; k < _m; ++k)
                    if (sgn(_binv[i][k]) != 0)
                        pi[k] += c * _binv[i][k];
            }
            return pi;
        }

        auto direction(int id) const -> std::vector<Rational>
        {
            std::vector<Rational> d(_m, 0);
            if (id >= 0) {
                for (auto & [k, a] : _columns[id].entries)
                    for (int i = 0; i < _m; ++i)
                        if (sgn(_binv[i][k]) != 0)
                            d[i] += _binv[i][k] * a;
            }
            else {
                bool art = is_artificial(id);
                int k = art ? -1 - _m - id : -1 - id;
                for (int i = 0; i < _m; ++i)
                    d[i] = art ? Rational(_binv[i][k]) : Rational(-_binv[i][k]);
            }
            return d;
        }

        void pivot(int row, int id, const std::vector<Rational> & d)
        {
            Rational p = d[row];
            for (auto & v : _binv[row])
                v /= p;
            _x[row] /= p;
            for (int i = 0; i < _m; ++i) {
                if (i == row || sgn(d[i]) == 0)
                    continue;
                const Rational f = d[i];
                for (int k = 0; k < _m; ++k)
                    if (sgn(_binv[row][k]) != 0)
                        _binv[i][k] -= f * _binv[row][k];
                _x[i] -= f * _x[row];
            }
            _basis[row] = id;
            ++_pivots;
        }

        // Entering column by Dantzig (most negative scaled reduced cost) or Bland.
        auto price(bool bland) const -> std::optional<int>
        {
            auto pi = multipliers();
            Integer den = 1;
            for (auto & q : pi)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
            std::vector<Integer> scaled(_m);
            for (int k = 0; k < _m; ++k)
                scaled[k] = pi[k].get_num() * (den / pi[k].get_den());

            std::vector<char> in_basis_surplus(_m, 0);
            std::vector<char> in_basis(_columns.size(), 0);
            for (int id : _basis) {
                if (id >= 0)
                    in_basis[id] = 1;
                else if (! is_artificial(id))
                    in_basis_surplus[-1 - id] = 1;
            }

            std::optional<int> best;
            Integer best_value = 0;
            Integer reduced;
            for (size_t j = 0; j < _columns.size(); ++j) {
                if (in_basis[j])
                    continue;
                reduced = _phase == 1 ? Integer(0) : _columns[j].cost * den;
                for (auto & [k, a] : _columns[j].entries)
                    reduced -= scaled[k] * a;
                if (sgn(reduced) < 0 && (! best || reduced < best_value)) {
                    best = static_cast<int>(j);
                    best_value = reduced;
                    if (bland)
                        return best;
                }
            }
            // surplus column -e_k has reduced cost pi_k
            for (int k = 0; k < _m; ++k) {
                if (in_basis_surplus[k] || sgn(scaled[k]) >= 0)
                    continue;
                if (! best || scaled[k] < best_value) {
                    best = -1 - k;
                    best_value = scaled[k];
                    if (bland)
                        return best;
                }
            }
            return best;
        }

        auto iterate() -> Status
        {
            int degenerate = 0;
            const int patience = 2 * _m + 10;
            while (true) {
                bool bland = degenerate > patience;
                auto entering = price(bland);
                if (! entering)
                    return Status::optimal;
                auto d = direction(*entering);
                std::optional<int> leave;
                Rational best;
                for (int i = 0; i < _m; ++i) {
                    if (sgn(d[i]) <= 0)
                        continue;
                    Rational ratio = _x[i] / d[i];
                    if (! leave || ratio < best || (ratio == best && order_key(_basis[i]) < order_key(_basis[*leave]))) {
                        leave = i;
                        best = ratio;
                    }
                }
                if (! leave)
                    return Status::unbounded;
                degenerate = sgn(best) == 0 ? degenerate + 1 : 0;
                pivot(*leave, *entering, d);
            }
        }

        void drive_out_artificials()
        {
            for (int i = 0; i < _m; ++i) {
                if (! is_artificial(_basis[i]))
                    continue;
                for (int k = 0; k < _m; ++k) {
                    if (sgn(_binv[i][k]) == 0)
                        continue;
                    bool used = std::find(_basis.begin(), _basis.end(), -1 - k) != _basis.end();
                    if (used)
                        continue;
                    pivot(i, -1 - k, direction(-1 - k));
                    break;
                }
                if (is_artificial(_basis[i]))
                    throw Error("simplex could not remove an artificial variable from the basis");
            }
        }
    };

    struct Prepared
    {
        /// Vertex index per LP row.
        std::vector<int> vertex;
        std::vector<int> row_of;
        std::vector<Column> columns;
        /// Integer scale applied to strategy i.
        std::vector<Integer> scale;
    };

    auto strategy_column(const Strategy & s, const std::vector<int> & row_of, Integer & scale) -> Column
    {
        scale = 1;
        for (auto & w : s.weights)
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), w.get_den_mpz_t());
        Column c;
        for (size_t v = 0; v < s.weights.size(); ++v) {
            if (sgn(s.weights[v]) == 0 || row_of[v] < 0)
                continue;
            Rational scaled = s.weights[v] * scale;
            c.entries.emplace_back(row_of[v], scaled.get_num());
        }
        Rational rhs = s.rhs() * scale;
        c.cost = rhs.get_num();
        return c;
    }

    auto prepare(const LinearProgram & lp) -> Prepared
    {
        Prepared p;
        p.row_of.assign(lp.order(), -1);
        for (int v = 0; v < lp.order(); ++v) {
            if (v == lp.root)
                continue;
            p.row_of[v] = static_cast<int>(p.vertex.size());
            p.vertex.push_back(v);
        }
        for (auto & s : lp.strategies) {
            Integer scale;
            p.columns.push_back(strategy_column(s, p.row_of, scale));
            p.scale.push_back(scale);
        }
        return p;
    }

    auto uncovered(const LinearProgram & lp, const std::vector<Strategy> & strategies) -> std::vector<int>
    {
        std::vector<char> covered(lp.order(), 0);
        for (auto & s : strategies)
            for (int v = 0; v < lp.order(); ++v)
                if (sgn(s.weights[v]) > 0)
                    covered[v] = 1;
        std::vector<int> out;
        for (int v = 0; v < lp.order(); ++v)
            if (v != lp.root && ! covered[v])
                out.push_back(v);
        return out;
    }

    void throw_uncovered(const LinearProgram & lp, std::vector<int> missing)
    {
        std::string names;
        for (int v : missing)
            names += (names.empty() ? "" : ", ") + lp.labels[v];
        throw UncoveredVertices("LP is unbounded: no strategy puts weight on " + names, std::move(missing));
    }

    auto floor_of(const Rational & q) -> Integer
    {
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        return f;
    }

    auto elapsed(std::chrono::steady_clock::time_point start) -> double
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    auto certificate_for(const LinearProgram & lp, const std::vector<Strategy> & strategies, const std::vector<int> & used, const std::vector<Rational> & multipliers) -> Certificate
    {
        Certificate cert;
        cert.root = lp.labels[lp.root];
        cert.columns = lp.labels;
        for (size_t i = 0; i < used.size(); ++i) {
            CertificateRow row;
            row.multiplier = multipliers[i];
            row.coeffs = strategies[used[i]].weights;
            row.rhs = strategies[used[i]].rhs();
            cert.rows.push_back(std::move(row));
        }
        return integral_multipliers(std::move(cert));
    }
}

auto build_lp(const Graph & g, int root, std::vector<Strategy> strategies) -> LinearProgram
{
    g.check_vertex(root);
    if (strategies.empty())
        throw ParameterError("the LP needs at least one strategy");
    for (auto & s : strategies) {
        if (s.root != root)
            throw ParameterError("strategy rooted at " + g.label(s.root) + " in an LP rooted at " + g.label(root));
        if (static_cast<int>(s.weights.size()) != g.order())
            throw ParameterError("strategy weight vector does not match the graph order");
    }
    return LinearProgram{root, g.labels(), std::move(strategies)};
}

auto solve_fractional(const LinearProgram & lp, const ColumnGenerator & generate) -> BoundReport
{
    auto start = std::chrono::steady_clock::now();
    if (lp.strategies.empty())
        throw ParameterError("the LP needs at least one strategy");

    auto prepared = prepare(lp);
    std::vector<Strategy> strategies = lp.strategies;
    const int m = static_cast<int>(prepared.vertex.size());

    BoundReport report;
    report.root = lp.root;
    report.labels = lp.labels;

    if (auto missing = uncovered(lp, strategies); ! missing.empty())
        throw_uncovered(lp, std::move(missing));

    DualSolution solution;
    while (true) {
        DualSimplex simplex(m, prepared.columns);
        solution = simplex.solve();
        report.stats.pivots += solution.pivots;
        if (solution.status != Status::optimal)
            throw Error("dual simplex ended without an optimum");
        if (! generate)
            break;

        std::vector<Rational> config(lp.order(), 0);
        for (int i = 0; i < m; ++i)
            config[prepared.vertex[i]] = solution.pi[i];
        auto fresh = generate(config);
        if (fresh.empty())
            break;
        for (auto & s : fresh) {
            if (s.root != lp.root || static_cast<int>(s.weights.size()) != lp.order())
                throw ParameterError("generated strategy does not match the LP");
            Integer scale;
            prepared.columns.push_back(strategy_column(s, prepared.row_of, scale));
            prepared.scale.push_back(scale);
            strategies.push_back(std::move(s));
            ++report.stats.generated;
        }
    }

    report.primal.assign(lp.order(), 0);
    for (int i = 0; i < m; ++i)
        report.primal[prepared.vertex[i]] = solution.pi[i];

    // strong duality and primal feasibility, exactly
    Rational primal_objective = 0;
    for (auto & c : report.primal) {
        if (sgn(c) < 0)
            throw Error("simplex produced a negative configuration entry");
        primal_objective += c;
    }
    if (primal_objective != solution.objective)
        throw Error("strong duality check failed: primal " + primal_objective.get_str() + " vs dual " + solution.objective.get_str());
    for (auto & s : strategies) {
        Rational lhs = 0;
        for (int v = 0; v < lp.order(); ++v)
            lhs += s.weights[v] * report.primal[v];
        if (lhs > s.rhs())
            throw Error("simplex configuration violates a strategy row");
    }

    for (size_t j = 0; j < solution.y.size(); ++j) {
        if (sgn(solution.y[j]) > 0) {
            report.used.push_back(static_cast<int>(j));
            report.multipliers.push_back(solution.y[j] * prepared.scale[j]);
        }
    }
    report.z_frac = solution.objective;
    report.bound = floor_of(report.z_frac) + 1;
    report.certificate = certificate_for(lp, strategies, report.used, report.multipliers);
    report.certificate.claimed_bound = report.bound;
    report.stats.strategies = static_cast<long long>(strategies.size());
    report.stats.nodes = 1;
    report.stats.seconds = elapsed(start);
    return report;
}

auto solve_integer(const LinearProgram & lp, long long node_limit) -> BoundReport
{
    auto start = std::chrono::steady_clock::now();
    auto report = solve_fractional(lp);
    auto prepared = prepare(lp);
    const int m = static_cast<int>(prepared.vertex.size());

    // floors of a feasible configuration stay feasible: weights are nonnegative
    auto floor_value = [](const std::vector<Rational> & pi) {
        Integer total = 0;
        for (auto & q : pi)
            total += floor_of(q);
        return total;
    };

    struct Node
    {
        std::vector<std::optional<Integer>> upper, lower;
    };
    Integer incumbent = floor_value(report.primal);
    long long nodes = 0;
    bool complete = true;
    std::vector<Node> stack{Node{std::vector<std::optional<Integer>>(m), std::vector<std::optional<Integer>>(m)}};

    while (! stack.empty()) {
        if (nodes >= node_limit) {
            complete = false;
            break;
        }
        Node node = std::move(stack.back());
        stack.pop_back();
        ++nodes;

        auto columns = prepared.columns;
        for (int i = 0; i < m; ++i) {
            if (node.upper[i])
                columns.push_back(Column{{{i, Integer(1)}}, *node.upper[i]});
            if (node.lower[i])
                columns.push_back(Column{{{i, Integer(-1)}}, -*node.lower[i]});
        }
        DualSimplex simplex(m, columns);
        auto solution = simplex.solve();
        report.stats.pivots += solution.pivots;
        if (solution.status != Status::optimal)
            continue; // dual unbounded: the branch is empty
        if (floor_of(solution.objective) <= incumbent)
            continue;

        incumbent = std::max(incumbent, floor_value(solution.pi));

        std::optional<int> branch;
        Rational best_fraction = 0;
        for (int i = 0; i < m; ++i) {
            Rational fraction = solution.pi[i] - Rational(floor_of(solution.pi[i]));
            if (sgn(fraction) > 0 && (! branch || fraction > best_fraction)) {
                branch = i;
                best_fraction = fraction;
            }
        }
        if (! branch) {
            incumbent = std::max(incumbent, floor_of(solution.objective));
            continue;
        }
        Integer k = floor_of(solution.pi[*branch]);
        Node down = node, up = std::move(node);
        down.upper[*branch] = k;
        up.lower[*branch] = k + 1;
        stack.push_back(std::move(down));
        stack.push_back(std::move(up));
    }

    report.stats.nodes = nodes;
    report.exact = complete;
    if (complete) {
        report.z_int = incumbent;
        report.bound = incumbent + 1;
    }
    report.stats.seconds = elapsed(start);
    return report;
}

namespace {
    auto shortest_path_strategies(const Graph & g, int root) -> std::vector<Strategy>
    {
        std::vector<int> toward(g.order(), -1);
        auto dist = bfs_distances(g, root);
        for (int v = 0; v < g.order(); ++v)
            for (int u : g.neighbors(v))
                if (dist[u] + 1 == dist[v]) {
                    toward[v] = u;
                    break;
                }
        std::vector<Strategy> out;
        for (int v = 0; v < g.order(); ++v) {
            if (v == root)
                continue;
            std::vector<int> parent(g.order(), -1);
            for (int x = v; x != root; x = toward[x])
                parent[x] = toward[x];
            out.push_back(basic_on_tree(g, root, parent));
        }
        return out;
    }
}

auto bound_pipeline(const Graph & g, int root, const PipelineOptions & options) -> BoundReport
{
    auto start = std::chrono::steady_clock::now();
    g.check_vertex(root);
    if (options.depth < 1)
        throw ParameterError("strategy depth must be >= 1");
    std::vector<Strategy> strategies;
    bool lazy = false;
    if (options.sample > 0)
        strategies = sample_strategies(g, root, options.sample, options.depth, options.seed);
    else {
        try {
            strategies = enumerate_basic(g, root, EnumerateOptions{options.depth, options.single_branch, options.max_strategies});
        }
        catch (const ScaleGuardError &) {
            if (! options.lazy)
                throw;
            lazy = true;
            strategies = shortest_path_strategies(g, root);
            if (options.depth > 2) {
                auto shallow = enumerate_basic(g, root, EnumerateOptions{2, true, options.max_strategies});
                strategies.insert(strategies.end(), shallow.begin(), shallow.end());
            }
        }
    }
    if (static_cast<long long>(strategies.size()) > options.max_strategies)
        throw ScaleGuardError("strategy pool of " + std::to_string(strategies.size()) + " exceeds the limit of " + std::to_string(options.max_strategies));

    auto lp = build_lp(g, root, std::move(strategies));
    BoundReport report;
    if (lazy) {
        std::vector<Strategy> added;
        ColumnGenerator generate = [&](const std::vector<Rational> & config) {
            auto fresh = most_violated_basic(g, root, options.depth, config);
            if (lp.strategies.size() + added.size() + fresh.size() > static_cast<size_t>(options.max_strategies))
                throw ScaleGuardError("lazily generated pool exceeds the limit of " + std::to_string(options.max_strategies));
            added.insert(added.end(), fresh.begin(), fresh.end());
            return fresh;
        };
        report = solve_fractional(lp, generate);
        if (options.ilp) {
            auto generated = report.stats.generated;
            lp.strategies.insert(lp.strategies.end(), added.begin(), added.end());
            report = solve_integer(lp, options.node_limit);
            report.stats.generated = generated;
        }
    }
    else
        report = options.ilp ? solve_integer(lp, options.node_limit) : solve_fractional(lp);

    auto verified = verify_certificate(g, report.certificate);
    if (verified.bound > floor_of(report.z_frac) + 1)
        throw Error("extracted certificate proves only " + verified.bound.get_str());
    report.stats.seconds = elapsed(start);
    return report;
}

auto bound_report_json(const Graph & g, const BoundReport & report) -> std::string
{
    using json = nlohmann::ordered_json;
    auto integer = [](const Integer & z) -> json {
        if (z.fits_slong_p())
            return z.get_si();
        return z.get_str();
    };
    json j;
    j["root"] = g.label(report.root);
    j["z_frac"] = report.z_frac.get_str();
    j["bound"] = integer(report.bound);
    if (report.z_int)
        j["z_int"] = integer(*report.z_int);
    j["exact"] = report.exact;
    json primal = json::object();
    for (int v = 0; v < g.order(); ++v)
        if (v != report.root)
            primal[g.label(v)] = report.primal[v].get_str();
    j["primal"] = primal;
    json used = json::array();
    for (auto & row : report.certificate.rows) {
        json weights = json::object();
        for (size_t i = 0; i < row.coeffs.size(); ++i)
            if (sgn(row.coeffs[i]) != 0)
                weights[report.certificate.columns[i]] = row.coeffs[i].get_den() == 1 && row.coeffs[i].get_num().fits_slong_p() ? json(row.coeffs[i].get_num().get_si()) : json(row.coeffs[i].get_str());
        used.push_back(json{{"weights", weights}, {"rhs", row.rhs.get_str()}});
    }
    for (size_t i = 0; i < report.used.size() && i < used.size(); ++i)
        used[i]["index"] = report.used[i];
    j["strategies_used"] = used;
    json multipliers = json::array();
    for (auto & q : report.multipliers)
        multipliers.push_back(q.get_str());
    j["multipliers"] = multipliers;
    json certificate_multipliers = json::array();
    for (auto & row : report.certificate.rows)
        certificate_multipliers.push_back(row.multiplier.get_str());
    j["certificate_multipliers"] = certificate_multipliers;
    j["stats"] = json{{"strategies", report.stats.strategies}, {"pivots", report.stats.pivots}, {"nodes", report.stats.nodes}, {"generated", report.stats.generated}};
    return j.dump();
}

}
