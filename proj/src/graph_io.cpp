#include <pebble/graph.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pebble {

namespace {

    auto trim(std::string_view s) -> std::string_view
    {
        while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    }

    auto is_integer(std::string_view s) -> bool
    {
        return ! s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    auto strip_comment(std::string_view line) -> std::string_view
    {
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        return trim(line);
    }

    auto split_neighbours(std::string_view s) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        std::string token;
        int parens = 0;
        for (char c : s) {
            if (c == '(')
                ++parens;
            else if (c == ')')
                --parens;
            if (parens == 0 && (c == ',' || std::isspace(static_cast<unsigned char>(c)))) {
                if (! token.empty())
                    out.push_back(std::move(token));
                token.clear();
            }
            else
                token += c;
        }
        if (! token.empty())
            out.push_back(std::move(token));
        return out;
    }

    auto build_from_lists(std::vector<std::string> labels, const std::vector<std::vector<std::string>> & lists, int first_line) -> Graph
    {
        std::map<std::string, int> index;
        for (int v = 0; v < static_cast<int>(labels.size()); ++v)
            index.emplace(labels[v], v);

        std::set<Edge> arcs;
        for (int u = 0; u < static_cast<int>(labels.size()); ++u)
            for (auto & name : lists[u]) {
                auto it = index.find(name);
                if (it == index.end())
                    throw ParseError("line " + std::to_string(first_line + u) + ": unknown neighbour '" + name + "'");
                if (! arcs.emplace(u, it->second).second)
                    throw ParseError("line " + std::to_string(first_line + u) + ": repeated neighbour '" + name + "'");
            }

        std::vector<Edge> edges;
        for (auto [u, v] : arcs) {
            if (! arcs.contains({v, u}))
                throw GraphError("asymmetric adjacency: " + labels[u] + " lists " + labels[v] + " but not conversely");
            if (u < v)
                edges.emplace_back(u, v);
            else if (u == v)
                throw GraphError("self-loop at vertex " + labels[u]);
        }
        return Graph(std::move(labels), edges);
    }

    auto parse_bracket_form(std::string_view text) -> Graph
    {
        std::vector<std::vector<std::string>> lists;
        int depth = 0;
        std::string current;
        for (char c : text) {
            if (c == '[') {
                if (depth++ != 1)
                    throw ParseError("unexpected '[' in bracketed adjacency list");
                current.clear();
            }
            else if (c == ']') {
                if (depth-- != 2)
                    throw ParseError("unbalanced ']' in bracketed adjacency list");
                lists.push_back({});
                for (auto & t : split_neighbours(current)) {
                    if (! is_integer(t))
                        throw ParseError("non-integer entry '" + t + "' in bracketed adjacency list");
                    lists.back().push_back("v" + t);
                }
            }
            else if (c == '(' || c == '{') {
                if (depth++ != 0)
                    throw ParseError("unexpected '(' in bracketed adjacency list");
            }
            else if (c == ')' || c == '}')
                --depth;
            else if (depth == 2)
                current += c;
        }
        if (depth != 0)
            throw ParseError("unbalanced brackets in adjacency list");
        return build_from_lists(default_labels(static_cast<int>(lists.size())), lists, 1);
    }
}

auto parse_graph_text(std::string_view text) -> Graph
{
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> lists;
    std::string body;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0, first_line = 0;
    bool saw_bracket = false;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = strip_comment(raw);
        if (line.empty())
            continue;
        if (saw_bracket || ((line.front() == '(' || line.front() == '[') && line.find(':') == std::string_view::npos)) {
            saw_bracket = true;
            body += std::string(line) + "\n";
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'label: neighbours'");
        auto label = trim(line.substr(0, colon));
        if (label.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty vertex label");
        if (first_line == 0)
            first_line = line_no;
        labels.emplace_back(label);
        lists.push_back(split_neighbours(line.substr(colon + 1)));
    }

    if (saw_bracket) {
        if (! labels.empty())
            throw ParseError("cannot mix bracketed and labelled adjacency lists");
        return parse_bracket_form(body);
    }
    if (labels.empty())
        throw ParseError("empty graph description");

    bool numeric = std::all_of(labels.begin(), labels.end(), [](auto & l) { return is_integer(l); });
    if (numeric) {
        const int n = static_cast<int>(labels.size());
        for (int i = 0; i < n; ++i)
            if (labels[i] != std::to_string(i + 1))
                throw ParseError("numeric labels must be 1.." + std::to_string(n) + " in order");
        for (auto & list : lists)
            for (auto & name : list) {
                if (! is_integer(name))
                    throw ParseError("numeric graph lists non-numeric neighbour '" + name + "'");
                name = "v" + name;
            }
        labels = default_labels(n);
    }
    return build_from_lists(std::move(labels), lists, first_line);
}

auto emit_graph_text(const Graph & g) -> std::string
{
    std::string out;
    for (int v = 0; v < g.order(); ++v) {
        out += g.label(v) + ":";
        bool first = true;
        for (int w : g.neighbors(v)) {
            out += first ? " " : ",";
            out += g.label(w);
            first = false;
        }
        out += "\n";
    }
    return out;
}

auto parse_graph_json(std::string_view text) -> Graph
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception & e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    }
    if (! j.is_object() || ! j.contains("vertices") || ! j.contains("edges"))
        throw ParseError("graph JSON needs \"vertices\" and \"edges\"");

    try {
        std::vector<std::string> labels;
        if (j["vertices"].is_number_integer())
            labels = default_labels(j["vertices"].get<int>());
        else
            labels = j["vertices"].get<std::vector<std::string>>();
        auto edges = j["edges"].get<std::vector<std::pair<int, int>>>();
        for (auto & [u, v] : edges)
            if (u > v)
                std::swap(u, v);
        return Graph(std::move(labels), edges);
    }
    catch (const nlohmann::json::exception & e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    }
}

auto emit_graph_json(const Graph & g) -> std::string
{
    nlohmann::json j;
    j["vertices"] = g.labels();
    auto edges = nlohmann::json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    j["edges"] = edges;
    return j.dump();
}

auto parse_graph(std::string_view text) -> Graph
{
    auto body = trim(text);
    if (! body.empty() && body.front() == '{')
        return parse_graph_json(body);
    return parse_graph_text(text);
}

auto load_graph_file(const std::string & path) -> Graph
{
    std::ifstream in(path);
    if (! in)
        throw ParameterError("cannot open graph file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str());
}

}
