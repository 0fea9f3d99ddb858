#include <pebble/certificate.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pebble {

namespace {

    auto trim(std::string_view s) -> std::string
    {
        while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return std::string(s);
    }

    auto split_cells(std::string_view s) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        std::string cell;
        for (char c : s) {
            if (c == '&' || std::isspace(static_cast<unsigned char>(c))) {
                if (! cell.empty())
                    out.push_back(std::move(cell));
                cell.clear();
            }
            else
                cell += c;
        }
        if (! cell.empty())
            out.push_back(std::move(cell));
        return out;
    }

    auto split_sections(std::string_view s) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        size_t start = 0;
        while (true) {
            auto bar = s.find('|', start);
            out.emplace_back(s.substr(start, bar - start));
            if (bar == std::string_view::npos)
                break;
            start = bar + 1;
        }
        return out;
    }

    auto line_error(int line, const std::string & message) -> ParseError
    {
        return ParseError("line " + std::to_string(line) + ": " + message);
    }

    auto cell_value(const std::string & cell, int line) -> Rational
    {
        try {
            return parse_rational(cell);
        }
        catch (const ParseError &) {
            throw line_error(line, "non-numeric cell '" + cell + "'");
        }
    }

    const std::set<std::string> directives{"graph", "name", "root", "claim", "labels", "case"};

    struct PendingRow
    {
        int line = 0;
        bool assume = false;
        bool checksum = false;
        std::string tag;
        std::optional<std::string> multiplier;
        std::vector<std::string> coeffs;
        std::optional<std::string> rhs;
        std::vector<std::string> flat;
    };

    struct Section
    {
        Certificate cert;
        std::vector<PendingRow> rows;
    };

    auto finish(Section & section) -> Certificate
    {
        auto & cert = section.cert;
        std::optional<size_t> width;
        if (! cert.columns.empty())
            width = cert.columns.size();
        for (auto & row : section.rows)
            if (! row.flat.size() && ! width)
                width = row.coeffs.size();
        if (! width)
            throw ParseError("cannot determine the column count: add a 'labels:' line or '|' separators");

        for (auto & row : section.rows) {
            if (! row.flat.empty()) {
                auto & f = row.flat;
                if (f.size() == *width + 2) {
                    row.multiplier = f.front();
                    row.coeffs.assign(f.begin() + 1, f.end() - 1);
                    row.rhs = f.back();
                }
                else if (f.size() == *width + 1) {
                    row.coeffs.assign(f.begin(), f.end() - 1);
                    row.rhs = f.back();
                }
                else
                    throw line_error(row.line, "expected " + std::to_string(*width) + " coefficients, found " + std::to_string(f.size()) + " cells");
            }
            if (row.coeffs.size() != *width)
                throw line_error(row.line, "ragged row: " + std::to_string(row.coeffs.size()) + " coefficients where " + std::to_string(*width) + " are expected");

            std::vector<Rational> values;
            for (auto & c : row.coeffs)
                values.push_back(cell_value(c, row.line));

            if (row.checksum) {
                if (! row.rhs)
                    throw line_error(row.line, "checksum row needs a total");
                values.push_back(cell_value(*row.rhs, row.line));
                cert.checksum = values;
                continue;
            }
            if (! row.rhs)
                throw line_error(row.line, "row has no right-hand side");

            CertificateRow out;
            out.line = row.line;
            out.coeffs = std::move(values);
            out.rhs = cell_value(*row.rhs, row.line);
            out.multiplier = row.multiplier ? cell_value(*row.multiplier, row.line) : Rational(1);
            out.tag = row.tag;
            bool negative = std::any_of(out.coeffs.begin(), out.coeffs.end(), [](auto & q) { return sgn(q) < 0; });
            if (row.assume)
                out.kind = RowKind::assumption;
            else if (negative) {
                out.kind = RowKind::assumption;
                out.inferred_assumption = true;
            }
            cert.rows.push_back(std::move(out));
        }
        if (cert.rows.empty())
            throw ParseError("certificate has no rows");
        return cert;
    }

    auto parse_sections(std::string_view text) -> std::vector<Certificate>
    {
        std::vector<Section> sections(1);
        Certificate shared;
        bool any_case = false;

        std::istringstream in{std::string(text)};
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = raw;
            if (auto hash = line.find('#'); hash != std::string::npos) {
                auto comment = trim(std::string_view(line).substr(hash + 1));
                if (trim(std::string_view(line).substr(0, hash)).empty() && ! comment.empty())
                    sections.back().cert.comments.push_back(comment);
                line = line.substr(0, hash);
            }
            // tolerate LaTeX row terminators and rules
            for (auto pos = line.find("\\\\"); pos != std::string::npos; pos = line.find("\\\\"))
                line.erase(pos, 2);
            line = trim(line);
            if (line.empty() || line == "\\hline")
                continue;

            if (auto colon = line.find(':'); colon != std::string::npos) {
                auto key = trim(std::string_view(line).substr(0, colon));
                if (directives.contains(key)) {
                    auto value = trim(std::string_view(line).substr(colon + 1));
                    if (key == "case") {
                        if (any_case || ! sections.back().rows.empty())
                            sections.emplace_back();
                        auto & cert = sections.back().cert;
                        auto comments = std::move(cert.comments);
                        cert = shared;
                        cert.comments = std::move(comments);
                        cert.name = value;
                        any_case = true;
                        continue;
                    }
                    auto & cert = sections.back().cert;
                    auto apply = [&](Certificate & c) {
                        if (key == "graph")
                            c.graph = value;
                        else if (key == "name")
                            c.name = value;
                        else if (key == "root")
                            c.root = value;
                        else if (key == "claim") {
                            try {
                                c.claimed_bound = Integer(value);
                            }
                            catch (const std::invalid_argument &) {
                                throw line_error(line_no, "claim must be an integer");
                            }
                        }
                        else if (key == "labels")
                            c.columns = split_cells(value);
                    };
                    apply(cert);
                    if (! any_case)
                        apply(shared);
                    continue;
                }
            }

            PendingRow row;
            row.line = line_no;
            if (auto semi = line.find(';'); semi != std::string::npos) {
                row.tag = trim(std::string_view(line).substr(semi + 1));
                line = trim(std::string_view(line).substr(0, semi));
            }
            if (line.rfind("assume", 0) == 0) {
                row.assume = true;
                line = trim(std::string_view(line).substr(6));
            }
            if (! line.empty() && line.front() == '=') {
                row.checksum = true;
                line = trim(std::string_view(line).substr(1));
            }

            auto sections_text = split_sections(line);
            if (sections_text.size() == 1) {
                row.flat = split_cells(sections_text[0]);
                if (row.checksum && ! row.flat.empty()) {
                    // "= s1 ... sn total"
                    row.coeffs.assign(row.flat.begin(), row.flat.end() - 1);
                    row.rhs = row.flat.back();
                    row.flat.clear();
                }
            }
            else if (sections_text.size() == 2) {
                row.coeffs = split_cells(sections_text[0]);
                auto rhs = split_cells(sections_text[1]);
                if (rhs.size() != 1)
                    throw line_error(line_no, "expected a single right-hand side");
                row.rhs = rhs[0];
            }
            else if (sections_text.size() == 3) {
                auto mult = split_cells(sections_text[0]);
                if (mult.size() > 1)
                    throw line_error(line_no, "expected a single multiplier");
                if (! mult.empty())
                    row.multiplier = mult[0];
                row.coeffs = split_cells(sections_text[1]);
                auto rhs = split_cells(sections_text[2]);
                if (rhs.size() != 1)
                    throw line_error(line_no, "expected a single right-hand side");
                row.rhs = rhs[0];
            }
            else
                throw line_error(line_no, "too many '|' separators");

            if (row.flat.empty() && row.coeffs.empty())
                throw line_error(line_no, "row has no coefficients");
            sections.back().rows.push_back(std::move(row));
        }

        std::vector<Certificate> out;
        for (auto & s : sections)
            if (! s.rows.empty() || ! out.empty() || &s == &sections.back())
                out.push_back(finish(s));
        return out;
    }

    auto column_vertices(const Graph & g, const Certificate & cert) -> std::vector<int>
    {
        std::vector<int> map;
        if (cert.columns.empty()) {
            size_t width = cert.rows.empty() ? 0 : cert.rows.front().coeffs.size();
            if (static_cast<int>(width) != g.order())
                throw CertificateError("certificate has " + std::to_string(width) + " columns but the graph has " + std::to_string(g.order()) + " vertices; add labels");
            for (int v = 0; v < g.order(); ++v)
                map.push_back(v);
            return map;
        }
        std::set<int> seen;
        for (auto & label : cert.columns) {
            int v = g.find(label);
            if (v < 0)
                throw CertificateError("certificate column '" + label + "' is not a vertex of the graph");
            if (! seen.insert(v).second)
                throw CertificateError("certificate column '" + label + "' appears twice");
            map.push_back(v);
        }
        return map;
    }

    auto by_vertex(const Graph & g, const std::vector<int> & columns, const std::vector<Rational> & coeffs) -> std::vector<Rational>
    {
        std::vector<Rational> w(g.order(), 0);
        for (size_t i = 0; i < columns.size(); ++i)
            w[columns[i]] = coeffs[i];
        return w;
    }

    auto render_inequality(const Graph & g, const std::vector<Rational> & w, const Rational & rhs) -> std::string
    {
        std::string out;
        for (int v = 0; v < g.order(); ++v) {
            if (sgn(w[v]) == 0)
                continue;
            Rational a = abs(w[v]);
            std::string term = (a == 1 ? "" : a.get_str() + "*") + "x(" + g.label(v) + ")";
            if (out.empty())
                out = (sgn(w[v]) < 0 ? "-" : "") + term;
            else
                out += (sgn(w[v]) < 0 ? " - " : " + ") + term;
        }
        return (out.empty() ? "0" : out) + " <= " + rhs.get_str();
    }

    auto row_name(size_t index, const CertificateRow & row) -> std::string
    {
        std::string s = "row " + std::to_string(index + 1);
        if (row.line > 0)
            s += " (line " + std::to_string(row.line) + ")";
        return s;
    }
}

auto certificate_root(const Graph & g, const Certificate & cert) -> int
{
    auto columns = column_vertices(g, cert);
    if (cert.root) {
        int r = g.find(*cert.root);
        if (r < 0)
            throw CertificateError("root '" + *cert.root + "' is not a vertex of the graph");
        return r;
    }
    std::vector<int> zero;
    for (size_t i = 0; i < columns.size(); ++i)
        if (std::all_of(cert.rows.begin(), cert.rows.end(), [&](auto & row) { return sgn(row.coeffs[i]) == 0; }))
            zero.push_back(columns[i]);
    if (zero.size() != 1)
        throw CertificateError(zero.empty() ? "no all-zero column marks the root" : "several all-zero columns; name the root with 'root:'");
    return zero.front();
}

auto verify_certificate(const Graph & g, const Certificate & cert) -> VerifiedBound
{
    if (cert.rows.empty())
        throw CertificateError("certificate has no rows");
    auto columns = column_vertices(g, cert);
    for (auto & row : cert.rows)
        if (row.coeffs.size() != columns.size())
            throw CertificateError("ragged certificate row at line " + std::to_string(row.line));
    const int root = certificate_root(g, cert);

    VerifiedBound result;
    result.root = root;
    result.column_sums.assign(g.order(), 0);
    result.total = 0;
    bool any_strategy = false;

    for (size_t i = 0; i < cert.rows.size(); ++i) {
        auto & row = cert.rows[i];
        if (sgn(row.multiplier) < 0)
            throw CertificateError(row_name(i, row) + ": negative multiplier " + row.multiplier.get_str());
        auto w = by_vertex(g, columns, row.coeffs);

        bool negative = std::any_of(w.begin(), w.end(), [](auto & q) { return sgn(q) < 0; });
        bool assumption = row.kind == RowKind::assumption || negative;
        if (assumption) {
            std::string text = row_name(i, row) + ": " + render_inequality(g, w, row.rhs);
            if (! row.tag.empty())
                text += " [" + row.tag + "]";
            result.assumptions.push_back(text);
            if (row.inferred_assumption || (negative && row.kind == RowKind::strategy))
                result.notes.push_back(row_name(i, row) + " has negative entries and is read as a negated case hypothesis");
        }
        else {
            any_strategy = true;
            try {
                validate_strategy(g, root, w);
            }
            catch (const InvalidStrategy & e) {
                throw InvalidStrategy(row_name(i, row) + ": " + e.what(), e.vertex());
            }
            Rational sum = 0;
            for (int v = 0; v < g.order(); ++v)
                sum += w[v];
            if (row.rhs < sum)
                throw InvalidStrategy(row_name(i, row) + ": right-hand side " + row.rhs.get_str() + " is below the weight total " + sum.get_str(), root);
            if (row.rhs > sum)
                result.notes.push_back(row_name(i, row) + ": right-hand side exceeds the weight total " + sum.get_str());
        }

        for (int v = 0; v < g.order(); ++v)
            if (v != root)
                result.column_sums[v] += row.multiplier * w[v];
        result.total += row.multiplier * row.rhs;
    }
    if (! any_strategy)
        throw CertificateError("certificate has no strategy rows");

    std::optional<int> weakest;
    for (int v = 0; v < g.order(); ++v)
        if (v != root && (! weakest || result.column_sums[v] < result.column_sums[*weakest]))
            weakest = v;
    if (! weakest)
        throw CertificateError("graph has no vertex besides the root");
    result.min_column = result.column_sums[*weakest];
    if (sgn(result.min_column) <= 0)
        throw CertificateError("vertex " + g.label(*weakest) + " has column sum " + result.min_column.get_str() + "; nothing bounds its pebbles");

    Rational ratio = result.total / result.min_column;
    mpz_fdiv_q(result.bound.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    result.bound += 1;

    if (cert.checksum) {
        auto & printed = *cert.checksum;
        std::vector<std::string> mismatched;
        for (size_t i = 0; i < columns.size(); ++i) {
            Rational actual = columns[i] == root ? Rational(0) : result.column_sums[columns[i]];
            if (printed[i] != actual)
                mismatched.push_back(g.label(columns[i]) + " printed " + printed[i].get_str() + ", actual " + actual.get_str());
        }
        if (printed.back() != result.total)
            mismatched.push_back("total printed " + printed.back().get_str() + ", actual " + result.total.get_str());
        for (auto & m : mismatched)
            result.notes.push_back("checksum mismatch: " + m);
    }

    if (cert.claimed_bound && result.bound > *cert.claimed_bound)
        throw VerificationFailure("certificate proves " + result.bound.get_str() + ", not the claimed " + cert.claimed_bound->get_str());
    return result;
}

auto parse_certificate(std::string_view text) -> Certificate
{
    auto all = parse_sections(text);
    if (all.size() != 1)
        throw ParseError("expected one certificate, found " + std::to_string(all.size()) + " cases");
    return all.front();
}

auto parse_certificates(std::string_view text) -> std::vector<Certificate>
{
    return parse_sections(text);
}

namespace {
    auto emit_body(const Certificate & cert, bool with_case) -> std::string
    {
        std::ostringstream out;
        for (auto & c : cert.comments)
            out << "# " << c << "\n";
        if (with_case)
            out << "case: " << cert.name << "\n";
        if (! cert.graph.empty())
            out << "graph: " << cert.graph << "\n";
        if (! with_case && ! cert.name.empty())
            out << "name: " << cert.name << "\n";
        if (cert.root)
            out << "root: " << *cert.root << "\n";
        if (cert.claimed_bound)
            out << "claim: " << cert.claimed_bound->get_str() << "\n";
        if (! cert.columns.empty()) {
            out << "labels:";
            for (auto & l : cert.columns)
                out << " " << l;
            out << "\n";
        }
        for (auto & row : cert.rows) {
            if (row.kind == RowKind::assumption && ! row.inferred_assumption)
                out << "assume ";
            out << row.multiplier.get_str() << " |";
            for (auto & c : row.coeffs)
                out << " " << c.get_str();
            out << " | " << row.rhs.get_str();
            if (! row.tag.empty())
                out << " ; " << row.tag;
            out << "\n";
        }
        if (cert.checksum) {
            auto & s = *cert.checksum;
            out << "= |";
            for (size_t i = 0; i + 1 < s.size(); ++i)
                out << " " << s[i].get_str();
            out << " | " << s.back().get_str() << "\n";
        }
        return out.str();
    }
}

auto emit_certificate(const Certificate & cert) -> std::string
{
    return emit_body(cert, false);
}

auto emit_certificates(const std::vector<Certificate> & certs) -> std::string
{
    if (certs.size() == 1 && certs.front().name.empty())
        return emit_certificate(certs.front());
    std::string out;
    for (size_t i = 0; i < certs.size(); ++i) {
        if (i > 0)
            out += "\n";
        out += emit_body(certs[i], true);
    }
    return out;
}

namespace {
    auto json_rational(const nlohmann::ordered_json & j) -> Rational
    {
        if (j.is_number_integer())
            return Rational(std::to_string(j.get<long long>()));
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number())
            return parse_rational(j.dump());
        throw ParseError("expected a rational, got " + j.dump());
    }

    auto rational_json(const Rational & q) -> nlohmann::ordered_json
    {
        if (q.get_den() == 1 && q.get_num().fits_slong_p())
            return q.get_num().get_si();
        return q.get_str();
    }

    auto certificate_from_object(const nlohmann::ordered_json & j) -> Certificate
    {
        Certificate cert;
        if (j.contains("graph"))
            cert.graph = j["graph"].get<std::string>();
        if (j.contains("name"))
            cert.name = j["name"].get<std::string>();
        if (j.contains("root"))
            cert.root = j["root"].get<std::string>();
        if (j.contains("claimed_bound") && ! j["claimed_bound"].is_null())
            cert.claimed_bound = Integer(j["claimed_bound"].is_string() ? j["claimed_bound"].get<std::string>() : std::to_string(j["claimed_bound"].get<long long>()));
        if (j.contains("labels"))
            cert.columns = j["labels"].get<std::vector<std::string>>();

        std::map<std::string, size_t> index;
        for (size_t i = 0; i < cert.columns.size(); ++i)
            index.emplace(cert.columns[i], i);
        auto column = [&](const std::string & label) {
            auto [it, fresh] = index.emplace(label, cert.columns.size());
            if (fresh)
                cert.columns.push_back(label);
            return it->second;
        };
        if (cert.root)
            column(*cert.root);

        std::vector<std::vector<std::pair<size_t, Rational>>> sparse;
        for (auto & r : j.at("rows")) {
            CertificateRow row;
            auto kind = r.value("kind", std::string("strategy"));
            if (kind == "assumption")
                row.kind = RowKind::assumption;
            else if (kind != "strategy")
                throw ParseError("unknown row kind '" + kind + "'");
            row.multiplier = r.contains("multiplier") ? json_rational(r["multiplier"]) : Rational(1);
            row.rhs = json_rational(r.at("rhs"));
            row.tag = r.value("tag", std::string());
            std::vector<std::pair<size_t, Rational>> entries;
            for (auto & [label, value] : r.at("coeffs").items())
                entries.emplace_back(column(label), json_rational(value));
            sparse.push_back(std::move(entries));
            cert.rows.push_back(std::move(row));
        }
        for (size_t i = 0; i < cert.rows.size(); ++i) {
            auto & row = cert.rows[i];
            row.coeffs.assign(cert.columns.size(), 0);
            for (auto & [c, q] : sparse[i])
                row.coeffs[c] = q;
            if (row.kind == RowKind::strategy && std::any_of(row.coeffs.begin(), row.coeffs.end(), [](auto & q) { return sgn(q) < 0; })) {
                row.kind = RowKind::assumption;
                row.inferred_assumption = true;
            }
        }
        if (cert.rows.empty())
            throw ParseError("certificate has no rows");
        return cert;
    }

    auto certificate_to_object(const Certificate & cert) -> nlohmann::ordered_json
    {
        nlohmann::ordered_json j;
        if (! cert.graph.empty())
            j["graph"] = cert.graph;
        if (! cert.name.empty())
            j["name"] = cert.name;
        if (cert.root)
            j["root"] = *cert.root;
        if (cert.claimed_bound) {
            if (cert.claimed_bound->fits_slong_p())
                j["claimed_bound"] = cert.claimed_bound->get_si();
            else
                j["claimed_bound"] = cert.claimed_bound->get_str();
        }
        size_t width = cert.rows.empty() ? 0 : cert.rows.front().coeffs.size();
        auto labels = cert.columns.empty() ? default_labels(static_cast<int>(width)) : cert.columns;
        j["labels"] = labels;
        auto rows = nlohmann::ordered_json::array();
        for (auto & row : cert.rows) {
            nlohmann::ordered_json r;
            r["kind"] = row.kind == RowKind::assumption ? "assumption" : "strategy";
            r["multiplier"] = rational_json(row.multiplier);
            nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
            for (size_t i = 0; i < row.coeffs.size(); ++i)
                if (sgn(row.coeffs[i]) != 0)
                    coeffs[labels[i]] = rational_json(row.coeffs[i]);
            r["coeffs"] = coeffs;
            r["rhs"] = rational_json(row.rhs);
            if (! row.tag.empty())
                r["tag"] = row.tag;
            rows.push_back(r);
        }
        j["rows"] = rows;
        return j;
    }
}

auto parse_certificate_json(std::string_view text) -> std::vector<Certificate>
{
    try {
        auto j = nlohmann::ordered_json::parse(text);
        std::vector<Certificate> out;
        if (j.is_array())
            for (auto & c : j)
                out.push_back(certificate_from_object(c));
        else if (j.contains("cases")) {
            for (auto c : j["cases"]) {
                for (auto key : {"graph", "root", "claimed_bound", "labels"})
                    if (j.contains(key) && ! c.contains(key))
                        c[key] = j[key];
                out.push_back(certificate_from_object(c));
            }
        }
        else
            out.push_back(certificate_from_object(j));
        if (out.empty())
            throw ParseError("certificate JSON holds no certificates");
        return out;
    }
    catch (const nlohmann::json::exception & e) {
        throw ParseError(std::string("certificate JSON: ") + e.what());
    }
}

auto emit_certificate_json(const Certificate & cert) -> std::string
{
    return certificate_to_object(cert).dump();
}

auto parse_certificate_any(std::string_view text) -> std::vector<Certificate>
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && (text[first] == '{' || text[first] == '['))
        return parse_certificate_json(text);
    return parse_certificates(text);
}

auto load_certificate_file(const std::string & path) -> std::vector<Certificate>
{
    std::ifstream in(path);
    if (! in)
        throw ParameterError("cannot open certificate file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_certificate_any(buffer.str());
}

auto make_certificate(const Graph & g, int root, const std::vector<Strategy> & strategies, const std::vector<Rational> & multipliers) -> Certificate
{
    if (strategies.size() != multipliers.size())
        throw ParameterError("one multiplier per strategy is required");
    Certificate cert;
    cert.root = g.label(root);
    cert.columns = g.labels();
    for (size_t i = 0; i < strategies.size(); ++i) {
        if (strategies[i].root != root)
            throw ParameterError("strategy rooted away from the certificate root");
        CertificateRow row;
        row.multiplier = multipliers[i];
        row.coeffs = strategies[i].weights;
        row.rhs = strategies[i].rhs();
        cert.rows.push_back(std::move(row));
    }
    return cert;
}

auto integral_multipliers(Certificate cert) -> Certificate
{
    mpz_class lcm = 1, gcd = 0;
    for (auto & row : cert.rows)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), row.multiplier.get_den_mpz_t());
    for (auto & row : cert.rows) {
        row.multiplier *= lcm;
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), row.multiplier.get_num_mpz_t());
    }
    if (gcd > 1)
        for (auto & row : cert.rows)
            row.multiplier /= gcd;
    return cert;
}

auto simplify_certificate(const Graph & g, const Certificate & cert) -> Certificate
{
    auto before = verify_certificate(g, cert);
    auto columns = column_vertices(g, cert);
    const int root = before.root;

    // group key: the single root child of a strategy row, -1 when not mergeable
    std::vector<int> key(cert.rows.size(), -1);
    for (size_t i = 0; i < cert.rows.size(); ++i) {
        auto & row = cert.rows[i];
        if (row.kind != RowKind::strategy || sgn(row.multiplier) == 0)
            continue;
        auto s = validate_strategy(g, root, by_vertex(g, columns, row.coeffs));
        auto children = s.root_children();
        if (children.size() == 1)
            key[i] = children.front();
    }

    Certificate out = cert;
    out.rows.clear();
    out.checksum.reset();
    std::set<int> done;
    for (size_t i = 0; i < cert.rows.size(); ++i) {
        if (key[i] < 0) {
            out.rows.push_back(cert.rows[i]);
            continue;
        }
        if (done.contains(key[i]))
            continue;
        done.insert(key[i]);

        std::vector<size_t> group;
        for (size_t j = i; j < cert.rows.size(); ++j)
            if (key[j] == key[i])
                group.push_back(j);
        if (group.size() == 1) {
            out.rows.push_back(cert.rows[i]);
            continue;
        }

        CertificateRow merged;
        merged.coeffs.assign(columns.size(), 0);
        merged.rhs = 0;
        for (size_t j : group) {
            auto & row = cert.rows[j];
            for (size_t c = 0; c < columns.size(); ++c)
                merged.coeffs[c] += row.multiplier * row.coeffs[c];
            merged.rhs += row.multiplier * row.rhs;
        }
        try {
            validate_strategy(g, root, by_vertex(g, columns, merged.coeffs));
            out.rows.push_back(std::move(merged));
        }
        catch (const InvalidStrategy &) {
            for (size_t j : group)
                out.rows.push_back(cert.rows[j]);
        }
    }

    auto after = verify_certificate(g, out);
    if (after.bound > before.bound)
        return cert;
    return out;
}

auto verify_case_analysis(const Graph & g, int root, const std::vector<Certificate> & cases) -> CaseAnalysis
{
    if (cases.empty())
        throw ParameterError("case analysis needs at least one case");
    CaseAnalysis result;
    result.disclaimer = "case exhaustiveness not checked: assumption rows are taken as hypotheses";
    for (size_t i = 0; i < cases.size(); ++i) {
        std::string label = "case " + std::to_string(i + 1) + (cases[i].name.empty() ? "" : " (" + cases[i].name + ")");
        try {
            auto verified = verify_certificate(g, cases[i]);
            if (verified.root != root)
                throw CertificateError("rooted at " + g.label(verified.root) + ", expected " + g.label(root));
            if (i == 0 || verified.bound > result.bound)
                result.bound = verified.bound;
            result.cases.push_back(std::move(verified));
        }
        catch (const InvalidStrategy & e) {
            throw InvalidStrategy(label + ": " + e.what(), e.vertex());
        }
        catch (const CertificateError & e) {
            throw CertificateError(label + ": " + e.what());
        }
        catch (const VerificationFailure & e) {
            throw VerificationFailure(label + ": " + e.what());
        }
    }
    return result;
}

}
