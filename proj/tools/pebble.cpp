// pebble: bounds, exact pebbling numbers, certificate checks and family constructions.

#include <pebble/families.hpp>
#include <pebble/pebbling.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace pebble;
using nlohmann::ordered_json;

namespace {

    enum Exit
    {
        ok = 0,
        usage = 1,
        arithmetic = 2,
        verification = 3,
        scale = 4
    };

    struct Output
    {
        bool json = false;
        std::string path;

        void write(const std::string & text) const
        {
            if (path.empty()) {
                std::cout << text;
                if (! text.empty() && text.back() != '\n')
                    std::cout << '\n';
                return;
            }
            std::ofstream out(path);
            if (! out)
                throw ParameterError("cannot write '" + path + "'");
            out << text;
            if (! text.empty() && text.back() != '\n')
                out << '\n';
        }
    };

    auto thread_count(size_t jobs) -> size_t
    {
        size_t n = std::max(1u, std::thread::hardware_concurrency());
        if (auto env = std::getenv("PEBBLE_THREADS")) {
            try {
                n = std::max(1L, std::stol(env));
            }
            catch (const std::exception &) {
                throw ParameterError(std::string("PEBBLE_THREADS must be a positive integer, not '") + env + "'");
            }
        }
        return std::min(n, std::max<size_t>(jobs, 1));
    }

    /// Runs job(i) for i < count on a bounded pool; results keep index order.
    template <typename T, typename F>
    auto fan_out(size_t count, F job) -> std::vector<T>
    {
        std::vector<std::optional<T>> results(count);
        std::vector<std::exception_ptr> errors(count);
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next++; i < count; i = next++) {
                try {
                    results[i] = job(i);
                }
                catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (size_t t = 1; t < thread_count(count); ++t)
            pool.emplace_back(worker);
        worker();
        for (auto & t : pool)
            t.join();
        std::vector<T> out;
        for (size_t i = 0; i < count; ++i) {
            if (errors[i])
                std::rethrow_exception(errors[i]);
            out.push_back(std::move(*results[i]));
        }
        return out;
    }

    auto roots_of(const Graph & g, const std::string & root) -> std::vector<int>
    {
        std::vector<int> out;
        if (root == "all") {
            for (int v = 0; v < g.order(); ++v)
                out.push_back(v);
            return out;
        }
        int v = g.find(root);
        if (v < 0)
            throw ParameterError("graph has no vertex '" + root + "'");
        out.push_back(v);
        return out;
    }

    auto rational_json(const Rational & q) -> ordered_json
    {
        auto s = format_rational(q);
        if (q.get_den() == 1 && q.get_num().fits_slong_p())
            return q.get_num().get_si();
        return s;
    }

    auto integer_json(const Integer & z) -> ordered_json
    {
        if (z.fits_slong_p())
            return z.get_si();
        return z.get_str();
    }

    struct BoundArgs
    {
        std::string graph, root = "all";
        PipelineOptions options;
    };

    auto cmd_bound(const BoundArgs & args, const Output & out) -> int
    {
        PipelineOptions options = args.options;
        if (options.sample > 0 && options.seed == 0)
            throw ParameterError("--sample needs --seed");
        auto g = gen::from_spec(args.graph);
        auto roots = roots_of(g, args.root);
        auto reports = fan_out<BoundReport>(roots.size(), [&](size_t i) { return bound_pipeline(g, roots[i], options); });

        if (out.json) {
            auto all = ordered_json::array();
            for (auto & r : reports)
                all.push_back(ordered_json::parse(bound_report_json(g, r)));
            out.write((roots.size() == 1 ? all[0] : all).dump(1));
            return ok;
        }
        std::ostringstream text;
        text << "root   z_frac        bound  z_int  strategies  used  pivots\n";
        for (auto & r : reports) {
            std::string root = g.label(r.root);
            text << root << std::string(root.size() < 7 ? 7 - root.size() : 1, ' ');
            auto z = format_rational(r.z_frac);
            text << z << std::string(z.size() < 14 ? 14 - z.size() : 1, ' ');
            auto b = r.bound.get_str();
            text << b << std::string(b.size() < 7 ? 7 - b.size() : 1, ' ');
            auto zi = r.z_int ? r.z_int->get_str() + (r.exact ? "" : "?") : "-";
            text << zi << std::string(zi.size() < 7 ? 7 - zi.size() : 1, ' ');
            auto s = std::to_string(r.stats.strategies);
            text << s << std::string(s.size() < 12 ? 12 - s.size() : 1, ' ');
            auto u = std::to_string(r.used.size());
            text << u << std::string(u.size() < 6 ? 6 - u.size() : 1, ' ');
            text << r.stats.pivots << '\n';
        }
        out.write(text.str());
        return ok;
    }

    struct ExactArgs
    {
        std::string graph, root = "all";
        SearchLimits limits;
    };

    auto cmd_exact(const ExactArgs & args, const Output & out) -> int
    {
        auto g = gen::from_spec(args.graph);
        auto roots = roots_of(g, args.root);
        auto results = fan_out<ExactResult>(roots.size(), [&](size_t i) { return pebbling_number_exact(g, roots[i], args.limits); });
        size_t worst = 0;
        for (size_t i = 1; i < results.size(); ++i)
            if (results[i].pi > results[worst].pi)
                worst = i;

        if (out.json) {
            ordered_json j;
            j["graph"] = args.graph;
            j["pi"] = results[worst].pi;
            auto per_root = ordered_json::array();
            for (size_t i = 0; i < roots.size(); ++i) {
                ordered_json r;
                r["root"] = g.label(roots[i]);
                r["pi"] = results[i].pi;
                r["witness"] = ordered_json::parse(configuration_to_json(results[i].witness));
                r["unsolvable"] = results[i].unsolvable_count;
                per_root.push_back(std::move(r));
            }
            j["roots"] = std::move(per_root);
            out.write(j.dump(1));
            return ok;
        }
        std::ostringstream text;
        for (size_t i = 0; i < roots.size(); ++i) {
            text << "pi(" << g.label(roots[i]) << ") = " << results[i].pi << "  witness";
            for (int v = 0; v < g.order(); ++v)
                text << ' ' << results[i].witness[v];
            text << '\n';
        }
        if (roots.size() > 1)
            text << "pi = " << results[worst].pi << '\n';
        out.write(text.str());
        return ok;
    }

    auto verified_json(const Graph & g, const VerifiedBound & v) -> ordered_json
    {
        ordered_json j;
        j["root"] = g.label(v.root);
        j["bound"] = integer_json(v.bound);
        j["total"] = rational_json(v.total);
        j["min_column"] = rational_json(v.min_column);
        j["assumptions"] = v.assumptions;
        j["notes"] = v.notes;
        return j;
    }

    struct VerifyArgs
    {
        std::string graph, cert;
    };

    auto cmd_verify(const VerifyArgs & args, const Output & out) -> int
    {
        auto certs = load_certificate_file(args.cert);
        std::string spec = args.graph;
        if (spec.empty()) {
            if (certs.front().graph.empty())
                throw ParameterError("certificate names no graph; pass --graph");
            spec = certs.front().graph;
        }
        auto g = gen::from_spec(spec);

        if (certs.size() == 1) {
            auto v = verify_certificate(g, certs.front());
            if (out.json) {
                ordered_json j{{"verified", true}, {"graph", spec}};
                j.update(verified_json(g, v));
                out.write(j.dump(1));
                return ok;
            }
            std::ostringstream text;
            text << "OK  root " << g.label(v.root) << "  bound " << v.bound << "  (" << format_rational(v.total) << " / " << format_rational(v.min_column) << ")\n";
            for (auto & a : v.assumptions)
                text << "  assumes " << a << '\n';
            for (auto & n : v.notes)
                text << "  note: " << n << '\n';
            out.write(text.str());
            return ok;
        }

        int root = certificate_root(g, certs.front());
        auto analysis = verify_case_analysis(g, root, certs);
        if (out.json) {
            ordered_json j;
            j["verified"] = true;
            j["graph"] = spec;
            j["root"] = g.label(root);
            j["bound"] = integer_json(analysis.bound);
            auto cases = ordered_json::array();
            for (size_t i = 0; i < certs.size(); ++i) {
                ordered_json c{{"case", certs[i].name}};
                c.update(verified_json(g, analysis.cases[i]));
                cases.push_back(std::move(c));
            }
            j["cases"] = std::move(cases);
            j["disclaimer"] = analysis.disclaimer;
            out.write(j.dump(1));
            return ok;
        }
        std::ostringstream text;
        text << "OK  root " << g.label(root) << "  bound " << analysis.bound << " over " << certs.size() << " cases\n";
        for (size_t i = 0; i < certs.size(); ++i) {
            auto & v = analysis.cases[i];
            text << "  case " << i + 1 << (certs[i].name.empty() ? "" : " (" + certs[i].name + ")") << ": bound " << v.bound << "  (" << format_rational(v.total) << " / " << format_rational(v.min_column) << ")\n";
            for (auto & a : v.assumptions)
                text << "    assumes " << a << '\n';
            for (auto & n : v.notes)
                text << "    note: " << n << '\n';
        }
        text << analysis.disclaimer << '\n';
        out.write(text.str());
        return ok;
    }

    auto partition_json(const Graph & g, const PathPartition & p) -> ordered_json
    {
        auto paths = ordered_json::array();
        for (auto & path : p.paths) {
            auto labels = ordered_json::array();
            for (int v : path)
                labels.push_back(g.label(v));
            paths.push_back(std::move(labels));
        }
        return paths;
    }

    auto strategies_json(const Graph & g, const std::vector<Strategy> & strategies) -> ordered_json
    {
        auto out = ordered_json::array();
        for (auto & s : strategies)
            out.push_back(ordered_json::parse(strategy_to_json(g, s)));
        return out;
    }

    auto unit_certificate(const Graph & g, int root, const std::vector<Strategy> & strategies) -> VerifiedBound
    {
        return verify_certificate(g, make_certificate(g, root, strategies, std::vector<Rational>(strategies.size(), 1)));
    }

    struct FamilyArgs
    {
        std::string graph, file, root;
        int n = 0, k = 0, d = 0, m = 0, depth = 0;
        std::string pm2_root = "u";
    };

    auto emit(const Output & out, const ordered_json & j) -> int
    {
        if (out.json) {
            out.write(j.dump(1));
            return ok;
        }
        std::ostringstream text;
        for (auto & [key, value] : j.items()) {
            if (key == "strategies")
                text << key << ": " << value.size() << '\n';
            else
                text << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
        }
        out.write(text.str());
        return ok;
    }

    auto cmd_family(const std::string & which, const FamilyArgs & args, const Output & out) -> int
    {
        ordered_json j;
        j["family"] = which;
        if (which == "tree") {
            std::string spec = ! args.file.empty() ? "file:" + args.file : args.graph;
            if (spec.empty())
                throw ParameterError("tree needs --file or --graph");
            auto g = gen::from_spec(spec);
            int root = args.root.empty() ? 0 : roots_of(g, args.root).front();
            auto t = tree_pebbling_number(g, root);
            j["root"] = g.label(root);
            j["pi"] = integer_json(t.pi);
            j["lengths"] = t.partition.lengths();
            j["paths"] = partition_json(g, t.partition);
        }
        else if (which == "cycle") {
            auto strategies = cycle_strategies(args.n);
            auto g = gen::cycle(args.n);
            j["n"] = args.n;
            j["pi"] = integer_json(cycle_pebbling_number(args.n));
            j["strategy_bound"] = integer_json(unit_certificate(g, 0, strategies).bound);
            j["strategies"] = strategies_json(g, strategies);
        }
        else if (which == "pm2") {
            Pm2Root root = args.pm2_root == "u" ? Pm2Root::u : args.pm2_root == "v" ? Pm2Root::v : args.pm2_root == "w" ? Pm2Root::w : throw ParameterError("--root must be u, v or w");
            auto g = gen::generalized_petersen(args.m, 2);
            auto strategies = pm2_strategies(args.m, root);
            int r = pm2_root_vertex(g, root);
            auto v = unit_certificate(g, r, strategies);
            j["m"] = args.m;
            j["n"] = g.order();
            j["root"] = g.label(r);
            j["bound"] = integer_json(v.bound);
            if (auto cover = uniform_cover_check(strategies))
                j["uniform_cover"] = rational_json(*cover);
            j["strategies"] = strategies_json(g, strategies);
        }
        else if (which == "cycle-power") {
            auto c = cycle_power_strategies(args.k);
            j["k"] = c.k;
            j["n"] = c.n;
            j["power"] = c.power;
            auto cover = uniform_cover_check(c.strategies);
            j["uniform_cover"] = cover ? rational_json(*cover) : ordered_json(nullptr);
            j["bound"] = integer_json(unit_certificate(c.graph, 0, c.strategies).bound);
            j["strategies"] = strategies_json(c.graph, c.strategies);
        }
        else if (which == "exponent") {
            auto b = pebbling_exponent_bounds(args.n, args.depth);
            j["n"] = args.n;
            j["lower"] = b.lower;
            j["upper"] = b.upper;
        }
        else if (which == "cube-bound") {
            Integer power;
            mpz_ui_pow_ui(power.get_mpz_t(), 2, args.d + 1);
            auto value = cube_bound(args.d);
            j["d"] = args.d;
            j["value"] = integer_json(value);
            j["two_to_d_plus_1"] = integer_json(power);
            j["below"] = value < power;
        }
        else if (which == "petersen") {
            auto g = gen::petersen();
            int root = args.root.empty() ? 0 : roots_of(g, args.root).front();
            auto cert = petersen_certificate(root);
            j["root"] = g.label(root);
            j["bound"] = integer_json(verify_certificate(g, cert).bound);
            j["certificate"] = ordered_json::parse(emit_certificate_json(cert));
        }
        else if (which == "lemke") {
            auto g = gen::lemke();
            auto certs = lemke_certificates();
            auto all = ordered_json::object();
            for (auto & [root, cert] : certs)
                all[root] = integer_json(verify_certificate(g, cert).bound);
            j["bounds"] = std::move(all);
            if (out.json) {
                auto bodies = ordered_json::object();
                for (auto & [root, cert] : certs)
                    bodies[root] = ordered_json::parse(emit_certificate_json(cert));
                j["certificates"] = std::move(bodies);
            }
        }
        else
            throw ParameterError("unknown family '" + which + "'");
        return emit(out, j);
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"Graph pebbling bounds from tree strategies, exact search and certificate checking"};
    app.require_subcommand(1);
    Output out;

    auto add_output = [&](CLI::App * sub) {
        sub->add_flag("--json", out.json, "JSON output");
        sub->add_option("--out", out.path, "Write output to a file");
    };

    BoundArgs bound;
    auto * bound_cmd = app.add_subcommand("bound", "LP upper bound per root with an extracted certificate");
    bound.options.depth = 3;
    bound_cmd->add_option("--graph", bound.graph, "Generator spec such as petersen, cycle:7, gp:8,2 or file:g.txt")->required();
    bound_cmd->add_option("--root", bound.root, "Vertex label or 'all'")->capture_default_str();
    bound_cmd->add_option("--depth", bound.options.depth, "Largest edge distance from the root inside a strategy tree")->capture_default_str()->check(CLI::PositiveNumber);
    bound_cmd->add_option("--sample", bound.options.sample, "Sample this many strategies instead of enumerating")->check(CLI::NonNegativeNumber);
    bound_cmd->add_option("--seed", bound.options.seed, "Seed for --sample");
    bound_cmd->add_option("--max-strategies", bound.options.max_strategies, "Enumeration guard; past it strategies are generated on demand")->capture_default_str();
    bound_cmd->add_flag("--multi-branch{false}", bound.options.single_branch, "Enumerate trees with several root children as well");
    bound_cmd->add_flag("--no-lazy{false}", bound.options.lazy, "Fail at the enumeration guard instead of generating strategies");
    bound_cmd->add_flag("--ilp", bound.options.ilp, "Also solve the integer program");
    bound_cmd->add_option("--node-limit", bound.options.node_limit, "Branch-and-bound node limit")->capture_default_str();
    add_output(bound_cmd);

    ExactArgs exact;
    auto * exact_cmd = app.add_subcommand("exact", "Exact pebbling number by exhaustive search");
    exact_cmd->add_option("--graph", exact.graph, "Generator spec")->required();
    exact_cmd->add_option("--root", exact.root, "Vertex label or 'all'")->capture_default_str();
    exact_cmd->add_option("--max-config-size", exact.limits.max_config_size, "Largest configuration size searched")->capture_default_str();
    exact_cmd->add_option("--max-order", exact.limits.max_order, "Largest graph order searched")->capture_default_str();
    add_output(exact_cmd);

    VerifyArgs verify;
    auto * verify_cmd = app.add_subcommand("verify", "Check a certificate file (matrix text or JSON)");
    verify_cmd->add_option("--graph", verify.graph, "Generator spec; defaults to the certificate's graph line");
    verify_cmd->add_option("--cert", verify.cert, "Certificate file")->required()->check(CLI::ExistingFile);
    add_output(verify_cmd);

    FamilyArgs family;
    std::string which;
    auto * family_cmd = app.add_subcommand("family", "Closed forms and explicit strategy constructions");
    family_cmd->add_option("name", which, "tree | cycle | pm2 | cycle-power | exponent | cube-bound | petersen | lemke")->required();
    family_cmd->add_option("--file", family.file, "Tree file for 'tree'");
    family_cmd->add_option("--graph", family.graph, "Tree generator spec for 'tree'");
    family_cmd->add_option("--root", family.root, "Root label (tree, petersen) or u|v|w (pm2)");
    family_cmd->add_option("--n", family.n, "Cycle length");
    family_cmd->add_option("--k", family.k, "Cycle power parameter");
    family_cmd->add_option("--d", family.d, "Cube dimension");
    family_cmd->add_option("--m", family.m, "P(m,2) parameter");
    family_cmd->add_option("--depth", family.depth, "Strategy depth for 'exponent' (0 picks diameter + 2)");
    add_output(family_cmd);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*bound_cmd)
            return cmd_bound(bound, out);
        if (*exact_cmd)
            return cmd_exact(exact, out);
        if (*verify_cmd)
            return cmd_verify(verify, out);
        if (which == "pm2" && ! family.root.empty())
            family.pm2_root = family.root;
        return cmd_family(which, family, out);
    }
    catch (const ScaleGuardError & e) {
        std::cerr << "scale guard: " << e.what() << '\n';
        return scale;
    }
    catch (const VerificationFailure & e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return verification;
    }
    catch (const InvalidStrategy & e) {
        std::cerr << "invalid strategy row: " << e.what() << '\n';
        return verification;
    }
    catch (const ParameterError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    catch (const ParseError & e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return usage;
    }
    catch (const GraphError & e) {
        std::cerr << "graph error: " << e.what() << '\n';
        return usage;
    }
    catch (const Error & e) {
        std::cerr << "failed: " << e.what() << '\n';
        return arithmetic;
    }
}
