#include "vcramsey/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "vcramsey/errors.hpp"

namespace vcramsey {

using nlohmann::json;

namespace {

struct Line {
    std::size_t number;
    std::string text;
};

std::vector<Line> content_lines(std::istream& in)
{
    std::vector<Line> lines;
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        const auto first = text.find_first_not_of(" \t");
        if (first == std::string::npos || text[first] == '#') continue;
        lines.push_back({number, text});
    }
    return lines;
}

std::size_t parse_count(const std::string& token, std::size_t line)
{
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
    try {
        return static_cast<std::size_t>(std::stoull(token));
    } catch (const std::exception&) {
        throw ParseError(line, "integer out of range: '" + token + "'");
    }
}

std::pair<std::size_t, std::size_t> parse_header(const std::vector<Line>& lines)
{
    if (lines.empty()) throw ParseError(1, "missing header line 'n m'");
    std::istringstream ss(lines[0].text);
    std::string a, b, extra;
    if (!(ss >> a >> b)) throw ParseError(lines[0].number, "header must be 'n m'");
    if (ss >> extra) throw ParseError(lines[0].number, "unexpected token '" + extra + "' in header");
    return {parse_count(a, lines[0].number), parse_count(b, lines[0].number)};
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path);
    return in;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    return out;
}

bool is_json_path(const std::string& path)
{
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

template <typename T>
T json_field(const json& j, const char* key)
{
    if (!j.contains(key)) throw ValidationError(std::string("JSON: missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("JSON: bad field '") + key + "': " + e.what());
    }
}

}  // namespace

SetSystem read_set_system_text(std::istream& in)
{
    const auto lines = content_lines(in);
    const auto [n, m] = parse_header(lines);
    if (lines.size() - 1 != m)
        throw ParseError(lines.back().number, "expected " + std::to_string(m) + " member lines, found " +
                                                  std::to_string(lines.size() - 1));
    std::vector<BitRow> rows;
    rows.reserve(m);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        std::istringstream ss(line.text);
        std::string first;
        ss >> first;
        BitRow row(n);
        if (first == "s") {
            std::string tok;
            while (ss >> tok) {
                const std::size_t v = parse_count(tok, line.number);
                if (v >= n) throw ParseError(line.number, "index " + tok + " outside ground set of size " + std::to_string(n));
                row.set(v);
            }
        } else {
            std::string rest;
            if (ss >> rest) throw ParseError(line.number, "bit-string member must be a single token");
            if (first.size() != n)
                throw ParseError(line.number, "bit-string has length " + std::to_string(first.size()) + ", expected " +
                                                  std::to_string(n));
            for (std::size_t v = 0; v < n; ++v) {
                if (first[v] == '1') row.set(v);
                else if (first[v] != '0') throw ParseError(line.number, "bit-string may only contain 0 and 1");
            }
        }
        rows.push_back(std::move(row));
    }
    return SetSystem(n, std::move(rows));
}

void write_set_system_text(std::ostream& out, const SetSystem& system)
{
    out << system.ground_size() << ' ' << system.size() << '\n';
    for (const BitRow& row : system.members()) {
        if (system.ground_size() == 0) {
            out << "s\n";
            continue;
        }
        std::string bits(system.ground_size(), '0');
        row.for_each([&](std::size_t v) { bits[v] = '1'; });
        out << bits << '\n';
    }
}

EdgeColoring read_coloring_text(std::istream& in)
{
    const auto lines = content_lines(in);
    const auto [n, m] = parse_header(lines);
    if (n > kMaxColoringVertices) throw CapacityError("coloring of K_" + std::to_string(n) + " is too large");
    if (m > kMaxColors) throw ParseError(lines[0].number, "too many colors");
    const std::size_t expected = n * (n - (n > 0 ? 1 : 0)) / 2;
    std::vector<Color> upper;
    upper.reserve(expected);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream ss(lines[i].text);
        std::string tok;
        while (ss >> tok) {
            const std::size_t c = parse_count(tok, lines[i].number);
            if (c >= m) throw ParseError(lines[i].number, "color " + tok + " outside [0, " + std::to_string(m) + ")");
            if (upper.size() == expected) throw ParseError(lines[i].number, "more than " + std::to_string(expected) + " edge colors");
            upper.push_back(static_cast<Color>(c));
        }
    }
    if (upper.size() != expected)
        throw ParseError(lines.back().number, "expected " + std::to_string(expected) + " edge colors, found " +
                                                  std::to_string(upper.size()));
    return EdgeColoring(n, m, std::move(upper));
}

void write_coloring_text(std::ostream& out, const EdgeColoring& coloring)
{
    out << coloring.n() << ' ' << coloring.m() << '\n';
    std::size_t e = 0;
    for (std::size_t u = 0; u + 1 < coloring.n(); ++u) {
        for (std::size_t v = u + 1; v < coloring.n(); ++v, ++e) {
            if (v > u + 1) out << ' ';
            out << coloring.upper_triangle()[e];
        }
        out << '\n';
    }
}

json to_json(const SetSystem& system)
{
    json members = json::array();
    for (const BitRow& row : system.members()) members.push_back(row.indices());
    json j{{"ground_size", system.ground_size()}, {"members", members}};
    if (system.has_labels()) j["labels"] = system.labels();
    return j;
}

SetSystem set_system_from_json(const json& j)
{
    const auto n = json_field<std::size_t>(j, "ground_size");
    const auto members = json_field<std::vector<IndexSet>>(j, "members");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = json_field<std::vector<std::string>>(j, "labels");
    return make_set_system(n, members, std::move(labels));
}

json to_json(const EdgeColoring& coloring)
{
    json edges = json::array();
    std::size_t e = 0;
    for (std::size_t u = 0; u < coloring.n(); ++u)
        for (std::size_t v = u + 1; v < coloring.n(); ++v, ++e)
            edges.push_back({u, v, coloring.upper_triangle()[e]});
    return json{{"n", coloring.n()}, {"m", coloring.m()}, {"edges", edges}};
}

EdgeColoring coloring_from_json(const json& j)
{
    const auto n = json_field<std::size_t>(j, "n");
    const auto m = json_field<std::size_t>(j, "m");
    const auto edges = json_field<std::vector<std::array<std::size_t, 3>>>(j, "edges");
    if (n > kMaxColoringVertices) throw CapacityError("coloring of K_" + std::to_string(n) + " is too large");
    EdgeColoring col(n, m, Color{0});
    if (edges.size() != col.edge_count())
        throw ValidationError("JSON coloring: expected " + std::to_string(col.edge_count()) + " edges, got " +
                              std::to_string(edges.size()));
    std::vector<bool> seen(col.edge_count(), false);
    for (const auto& [u, v, c] : edges) {
        if (u >= n || v >= n || u == v) throw ValidationError("JSON coloring: invalid edge");
        if (c >= m) throw ValidationError("JSON coloring: color out of range");
        const std::size_t e = col.edge_index(u, v);
        if (seen[e]) throw ValidationError("JSON coloring: edge listed twice");
        seen[e] = true;
        col.set_color(u, v, static_cast<Color>(c));
    }
    return col;
}

json to_json(const CliqueCertificate& c)
{
    return json{{"vertices", c.vertices}, {"color", c.color}, {"size", c.size()}};
}

CliqueCertificate certificate_from_json(const json& j)
{
    return CliqueCertificate{json_field<IndexSet>(j, "vertices"), json_field<Color>(j, "color")};
}

json to_json(const Packing& p)
{
    return json{{"ground_size", p.ground_size}, {"family_size", p.family_size}, {"delta", p.delta},
                {"points", p.points},           {"size", p.points.size()},      {"maximal", p.maximal}};
}

json to_json(const Partition& p)
{
    return json{{"ground_size", p.ground_size},
                {"family_size", p.family_size},
                {"delta", p.delta},
                {"d", p.d},
                {"c1", p.c1},
                {"c2", p.c2},
                {"size_cap", p.size_cap},
                {"part_count", p.parts.size()},
                {"part_count_bound", p.part_count_bound()},
                {"parts", p.parts}};
}

Partition partition_from_json(const json& j)
{
    Partition p;
    p.ground_size = json_field<std::size_t>(j, "ground_size");
    p.family_size = json_field<std::size_t>(j, "family_size");
    p.delta = json_field<std::size_t>(j, "delta");
    p.d = json_field<int>(j, "d");
    p.c1 = json_field<double>(j, "c1");
    p.c2 = json_field<double>(j, "c2");
    p.size_cap = json_field<std::uint64_t>(j, "size_cap");
    p.parts = json_field<std::vector<IndexSet>>(j, "parts");
    return p;
}

json to_json(const PartitionReport& r)
{
    json checks = json::array();
    for (const CheckResult& c : r.checks) {
        json jc{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
        if (c.witness) jc["witness"] = {c.witness->first, c.witness->second};
        checks.push_back(jc);
    }
    return json{{"all_passed", r.all_passed()}, {"max_same_part_crossing", r.max_same_part_crossing},
                {"checks", checks}};
}

json to_json(const ExtensionResult& r)
{
    json j{{"target_size", r.target_size},
           {"candidates", r.candidates},
           {"base_in_candidates", r.base_in_candidates},
           {"missing_base", r.missing_base},
           {"delta", r.delta},
           {"guaranteed", r.guaranteed},
           {"found", r.certificate.has_value()}};
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    return j;
}

json to_json(const DescentResult& r)
{
    return json{{"certificate", to_json(r.certificate)},
                {"target", r.target},
                {"achieved", r.achieved},
                {"success", r.success},
                {"budget_exhausted", r.budget_exhausted},
                {"nodes", r.nodes}};
}

json to_json(const TraceReport& r)
{
    json levels = json::array();
    for (const LevelSummary& l : r.levels) {
        levels.push_back(json{{"level", l.level},
                              {"budget", l.budget},
                              {"family_size", l.family_size},
                              {"active_vertices", l.active},
                              {"uncovered_edges", l.uncovered},
                              {"max_menu", l.max_menu},
                              {"properties",
                               {{"menu_bound", l.menu_ok},
                                {"active_lower_bound", l.active_ok},
                                {"coverage_lower_bound", l.covered_ok}}},
                              {"active_rhs", l.active_rhs},
                              {"covered_rhs", l.covered_rhs}});
    }
    json steps = json::array();
    for (const StepReport& s : r.steps) {
        json parts = json::array();
        for (const PartSummary& p : s.part_summaries)
            parts.push_back(json{{"size", p.size},
                                 {"small", p.small},
                                 {"degree_colors", p.degree_colors},
                                 {"clique_colors", p.clique_colors},
                                 {"undecided", p.undecided},
                                 {"menu_overflow", p.menu_overflow}});
        json hist;
        for (std::size_t t = 1; t < s.histogram.size(); ++t)
            hist[to_string(static_cast<UncoveredType>(t))] = s.histogram[t];
        json ext = json::array();
        for (const CliqueCertificate& c : s.extensions) ext.push_back(to_json(c));
        steps.push_back(json{{"from_level", s.from_level},
                             {"delta_exact", s.delta_exact},
                             {"delta", s.delta},
                             {"size_cap", s.size_cap},
                             {"small_threshold", s.small_threshold},
                             {"degree_threshold", s.degree_threshold},
                             {"part_count", s.parts.size()},
                             {"parts", parts},
                             {"edge_types", hist},
                             {"extensions", ext}});
    }
    return json{{"d", r.d},
                {"budgets", r.budgets},
                {"levels", levels},
                {"steps", steps},
                {"halted_empty_family", r.halted_empty_family}};
}

json to_json(const RamseyResult& r)
{
    json j{{"k", r.k},
           {"m", r.m},
           {"lower_bound", r.lower_bound},
           {"exhaustive_confirmed", r.exhaustive_confirmed},
           {"colorings_checked", r.colorings_checked},
           {"nodes", r.nodes}};
    j["value"] = r.value ? json(*r.value) : json(nullptr);
    j["undecided_at"] = r.undecided_at ? json(*r.undecided_at) : json(nullptr);
    if (r.witness) {
        j["witness"] = to_json(*r.witness);
        j["witness_method"] = r.witness_method;
    }
    return j;
}

SetSystem load_set_system(const std::string& path)
{
    if (is_json_path(path)) return set_system_from_json(load_json(path));
    auto in = open_in(path);
    return read_set_system_text(in);
}

void save_set_system(const std::string& path, const SetSystem& system)
{
    if (is_json_path(path)) return save_json(path, to_json(system));
    auto out = open_out(path);
    write_set_system_text(out, system);
}

EdgeColoring load_coloring(const std::string& path)
{
    if (is_json_path(path)) return coloring_from_json(load_json(path));
    auto in = open_in(path);
    return read_coloring_text(in);
}

void save_coloring(const std::string& path, const EdgeColoring& coloring)
{
    if (is_json_path(path)) return save_json(path, to_json(coloring));
    auto out = open_out(path);
    write_coloring_text(out, coloring);
}

json load_json(const std::string& path)
{
    auto in = open_in(path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void save_json(const std::string& path, const json& j)
{
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

}  // namespace vcramsey
