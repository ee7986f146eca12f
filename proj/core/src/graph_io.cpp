#include "apex/graph_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace apex {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

VertexId parse_id(std::string_view token, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError("expected a nonnegative integer, got '" + std::string(token) + "'", line);
    if (value > kMaxVertexId)
        throw CapacityError("vertex id " + std::to_string(value) + " exceeds capacity");
    return static_cast<VertexId>(value);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

LoadReport load_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto tokens = split_ws(line);
        if (tokens.size() != 2)
            throw ParseError("expected two vertex ids", lineno);
        edges.emplace_back(parse_id(tokens[0], lineno), parse_id(tokens[1], lineno));
    }
    auto built = Graph::build(edges);
    return {std::move(built.graph), built.dropped_loops, built.dropped_duplicates};
}

LoadReport load_dimacs(std::istream& in) {
    std::vector<Edge> edges;
    std::string raw;
    std::size_t lineno = 0;
    bool have_header = false;
    std::uint64_t n = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == 'c') continue;
        auto tokens = split_ws(line);
        if (tokens[0] == "p") {
            if (have_header) throw ParseError("duplicate problem line", lineno);
            if (tokens.size() != 4 || tokens[1] != "edge")
                throw ParseError("expected 'p edge <n> <m>'", lineno);
            n = parse_id(tokens[2], lineno);
            have_header = true;
        } else if (tokens[0] == "e") {
            if (!have_header) throw ParseError("edge before problem line", lineno);
            if (tokens.size() != 3) throw ParseError("expected 'e <u> <v>'", lineno);
            VertexId u = parse_id(tokens[1], lineno);
            VertexId v = parse_id(tokens[2], lineno);
            if (u < 1 || u > n || v < 1 || v > n)
                throw ParseError("vertex id out of declared range", lineno);
            edges.emplace_back(u, v);
        } else {
            throw ParseError("unrecognized line '" + std::string(tokens[0]) + "...'", lineno);
        }
    }
    if (!have_header && !edges.empty())
        throw ParseError("missing problem line", lineno);

    // All ids 1..n are present, including isolated ones.
    std::vector<VertexId> all;
    all.reserve(n);
    for (std::uint64_t v = 1; v <= n; ++v) all.push_back(static_cast<VertexId>(v));
    auto built = Graph::build(edges, all);
    return {std::move(built.graph), built.dropped_loops, built.dropped_duplicates};
}

} // namespace

LoadReport load_graph(std::istream& in, GraphFormat format) {
    switch (format) {
    case GraphFormat::EdgeList: return load_edge_list(in);
    case GraphFormat::Dimacs: return load_dimacs(in);
    }
    throw DomainError("load_graph: unknown format");
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_dimacs(std::ostream& out, const Graph& g) {
    VertexId max_id = 0;
    for (VertexId v : g.vertices()) {
        if (v == 0) throw DomainError("write_dimacs: ids must be 1-based");
        max_id = std::max(max_id, v);
    }
    out << "p edge " << max_id << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

} // namespace apex
