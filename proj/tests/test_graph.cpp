#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "apex/graph.hpp"
#include "apex/graph_io.hpp"

using namespace apex;

namespace {

Graph complete(int n) {
    std::vector<Edge> es;
    for (VertexId i = 0; i < static_cast<VertexId>(n); ++i)
        for (VertexId j = i + 1; j < static_cast<VertexId>(n); ++j) es.emplace_back(i, j);
    return Graph::from_edges(es);
}

} // namespace

TEST_CASE("load edge list: triangle") {
    std::istringstream in("1 2\n2 3\n1 3");
    auto r = load_graph(in, GraphFormat::EdgeList);
    CHECK(r.graph.vertex_count() == 3);
    CHECK(r.graph.edge_count() == 3);
    CHECK(r.graph.has_edge(1, 2));
    CHECK(r.graph.has_edge(2, 3));
    CHECK(r.graph.has_edge(1, 3));
    CHECK(!r.graph.has_vertex(0));
}

TEST_CASE("load edge list: empty stream") {
    std::istringstream in("");
    auto r = load_graph(in, GraphFormat::EdgeList);
    CHECK(r.graph.vertex_count() == 0);
    CHECK(r.graph.edge_count() == 0);
}

TEST_CASE("load edge list: duplicates counted, loops counted") {
    std::istringstream in("# comment\n1 2\n2 1\n\n3 3\n");
    auto r = load_graph(in, GraphFormat::EdgeList);
    CHECK(r.graph.edge_count() == 1);
    CHECK(r.dropped_duplicates == 1);
    CHECK(r.dropped_loops == 1);
    CHECK(r.graph.has_vertex(3)); // loop endpoint still a vertex
}

TEST_CASE("load edge list: parse error carries line number") {
    std::istringstream in("1 2\nbogus line here\n");
    try {
        load_graph(in, GraphFormat::EdgeList);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("load dimacs: ids preserved 1-based, isolated vertices present") {
    std::istringstream in("c header\np edge 4 2\ne 1 2\ne 2 3\n");
    auto r = load_graph(in, GraphFormat::Dimacs);
    CHECK(r.graph.vertex_count() == 4);
    CHECK(r.graph.has_vertex(4));
    CHECK(r.graph.degree(4) == 0);
    CHECK(r.graph.has_edge(1, 2));
}

TEST_CASE("dimacs: edge before header rejected") {
    std::istringstream in("e 1 2\n");
    CHECK_THROWS_AS(load_graph(in, GraphFormat::Dimacs), ParseError);
}

TEST_CASE("round trip: edge list preserves ids") {
    auto g = complete(5);
    std::ostringstream out;
    write_edge_list(out, g);
    std::istringstream in(out.str());
    auto r = load_graph(in, GraphFormat::EdgeList);
    CHECK(r.graph == g);
}

TEST_CASE("round trip: dimacs preserves 1-based ids") {
    std::vector<Edge> es{{1, 2}, {2, 3}};
    std::vector<VertexId> extra{4};
    auto g = Graph::from_edges(es, extra);
    std::ostringstream out;
    write_dimacs(out, g);
    std::istringstream in(out.str());
    auto r = load_graph(in, GraphFormat::Dimacs);
    CHECK(r.graph == g);
}

TEST_CASE("delete_vertices: K5 minus a vertex is K4") {
    auto k5 = complete(5);
    auto k4 = k5.delete_vertex(0);
    CHECK(k4.vertex_count() == 4);
    CHECK(k4.edge_count() == 6);
    CHECK(!k4.has_vertex(0));
    CHECK(k4.has_vertex(4)); // ids stable
}

TEST_CASE("delete_vertices: empty set is identity") {
    auto g = complete(4);
    CHECK(g.delete_vertices({}) == g);
}

TEST_CASE("delete_vertices: triangle minus middle leaves one edge") {
    auto g = Graph::from_edges(std::vector<Edge>{{1, 2}, {2, 3}, {1, 3}});
    const VertexId s[1] = {2};
    auto h = g.delete_vertices(s);
    CHECK(h.vertex_count() == 2);
    CHECK(h.edge_count() == 1);
    CHECK(h.has_edge(1, 3));
}

TEST_CASE("delete_vertices: absent vertex rejected") {
    auto g = complete(3);
    const VertexId s[1] = {9};
    CHECK_THROWS_AS(g.delete_vertices(s), DomainError);
}

TEST_CASE("delete_vertices: exhaustive contract on small graphs") {
    // V(g - s) == V(g) \ s and surviving edges are exactly those avoiding s.
    std::mt19937 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + static_cast<int>(rng() % 8);
        std::vector<Edge> es;
        for (VertexId i = 0; i < static_cast<VertexId>(n); ++i)
            for (VertexId j = i + 1; j < static_cast<VertexId>(n); ++j)
                if (rng() % 2) es.emplace_back(i, j);
        std::vector<VertexId> all;
        for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) all.push_back(v);
        auto g = Graph::from_edges(es, all);

        std::vector<VertexId> s;
        for (VertexId v = 0; v < static_cast<VertexId>(n); ++v)
            if (rng() % 3 == 0) s.push_back(v);
        auto h = g.delete_vertices(s);

        for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
            bool dropped = std::find(s.begin(), s.end(), v) != s.end();
            CHECK(h.has_vertex(v) == !dropped);
        }
        for (const auto& [u, v] : es) {
            bool survives = h.has_vertex(u) && h.has_vertex(v);
            CHECK(h.has_edge(u, v) == survives);
        }
        CHECK(g.vertex_count() == static_cast<std::size_t>(n)); // g unchanged
    }
}

TEST_CASE("connected_components: ordering and contents") {
    auto tri = Graph::from_edges(std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
    auto comps = tri.connected_components();
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 3);

    Graph empty;
    CHECK(empty.connected_components().empty());

    auto two = Graph::from_edges(std::vector<Edge>{{5, 6}, {1, 9}});
    comps = two.connected_components();
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<VertexId>{1, 9});
    CHECK(comps[1] == std::vector<VertexId>{5, 6});
}

TEST_CASE("edge_count_prefilter spot values") {
    CHECK(edge_count_prefilter(complete(5), 1));   // 10 <= 4*5
    CHECK(!edge_count_prefilter(complete(20), 0)); // 190 > 3*20
    CHECK(edge_count_prefilter(Graph{}, 0));
}
