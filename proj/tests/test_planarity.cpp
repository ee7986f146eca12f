#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apex/planarity.hpp"
#include "support/builders.hpp"

using namespace apex;
using namespace apex::testsupport;

TEST_CASE("is_planar classics") {
    CHECK(is_planar(complete(4)));
    CHECK(!is_planar(complete(5)));
    CHECK(!is_planar(complete_bipartite(3, 3)));
    CHECK(is_planar(complete_bipartite(2, 3)));
    CHECK(is_planar(rect_grid(3, 3)));
    CHECK(!is_planar(petersen()));
    CHECK(is_planar(Graph{}));
}

TEST_CASE("find_kuratowski: planar grid has none") {
    CHECK(!find_kuratowski(rect_grid(3, 3)).has_value());
}

TEST_CASE("find_kuratowski: K5 is its own subdivision") {
    auto w = find_kuratowski(complete(5));
    REQUIRE(w.has_value());
    CHECK(w->kind == KuratowskiKind::K5);
    CHECK(w->branch_vertices.size() == 5);
    for (const auto& p : w->edge_paths) CHECK(p.length() == 1);
    auto check = validate_witness(complete(5), *w);
    CHECK_MESSAGE(check.ok, check.reason);
}

TEST_CASE("find_kuratowski: K5 with one subdivided edge") {
    auto host = subdivide_edge(complete(5), 0, 1); // vertex 5 splits edge 0-1
    auto w = find_kuratowski(host);
    REQUIRE(w.has_value());
    CHECK(w->kind == KuratowskiKind::K5);
    // Witness must span the whole 6-vertex host: exactly one path of length 2
    // through the subdivision vertex, the other nine direct.
    CHECK(w->all_vertices().size() == 6);
    int longer = 0;
    for (const auto& p : w->edge_paths) {
        CHECK(p.length() >= 1);
        if (p.length() == 2) {
            ++longer;
            CHECK(p.vertices[1] == 5);
        }
    }
    CHECK(longer == 1);
    auto check = validate_witness(host, *w);
    CHECK_MESSAGE(check.ok, check.reason);
}

TEST_CASE("find_kuratowski: K33 shape") {
    auto w = find_kuratowski(complete_bipartite(3, 3));
    REQUIRE(w.has_value());
    CHECK(w->kind == KuratowskiKind::K33);
    CHECK(w->branch_vertices.size() == 6);
    CHECK(w->edge_paths.size() == 9);
    auto check = validate_witness(complete_bipartite(3, 3), *w);
    CHECK_MESSAGE(check.ok, check.reason);
}

TEST_CASE("find_kuratowski: petersen yields K33 (max degree 3 forbids K5)") {
    auto g = petersen();
    auto w = find_kuratowski(g);
    REQUIRE(w.has_value());
    CHECK(w->kind == KuratowskiKind::K33);
    auto check = validate_witness(g, *w);
    CHECK_MESSAGE(check.ok, check.reason);
    CHECK(!is_planar(w->subgraph()));
}

TEST_CASE("find_kuratowski: first nonplanar component supplies the witness") {
    auto g = disjoint_union(rect_grid(2, 3), complete(5));
    auto w = find_kuratowski(g);
    REQUIRE(w.has_value());
    for (VertexId v : w->all_vertices()) CHECK(v >= 6); // K5 ids sit above the grid
}

TEST_CASE("planar_embedding: Euler face counts") {
    auto tri = cycle(3);
    auto rs = planar_embedding(tri);
    REQUIRE(rs.has_value());
    CHECK(count_faces(tri, *rs) == 2);
    CHECK(embedding_satisfies_euler(tri, *rs));

    auto k4 = complete(4);
    rs = planar_embedding(k4);
    REQUIRE(rs.has_value());
    CHECK(count_faces(k4, *rs) == 4);
    CHECK(embedding_satisfies_euler(k4, *rs));

    CHECK(!planar_embedding(complete(5)).has_value());
}

TEST_CASE("planar_embedding: disconnected and edgeless parts") {
    auto g = disjoint_union(cycle(4), path(2));
    auto rs = planar_embedding(g);
    REQUIRE(rs.has_value());
    CHECK(embedding_satisfies_euler(g, *rs));

    auto lone = Graph::from_edges(std::vector<Edge>{}, std::vector<VertexId>{7});
    rs = planar_embedding(lone);
    REQUIRE(rs.has_value());
    CHECK(count_faces(lone, *rs) == 1);
    CHECK(embedding_satisfies_euler(lone, *rs));
}

TEST_CASE("agreement: exhaustive on 5 and 6 vertices") {
    for (int n = 5; n <= 6; ++n) {
        std::uint64_t masks = 1ull << (n * (n - 1) / 2);
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            auto g = graph_from_mask(n, mask);
            bool planar = is_planar(g);
            auto w = find_kuratowski(g);
            auto rs = planar_embedding(g);
            REQUIRE(planar == !w.has_value());
            REQUIRE(planar == rs.has_value());
            if (w) {
                auto check = validate_witness(g, *w);
                REQUIRE_MESSAGE(check.ok, check.reason);
                REQUIRE(!is_planar(w->subgraph()));
            }
            if (rs) REQUIRE(embedding_satisfies_euler(g, *rs));
            // Euler necessary condition as a cross-check.
            if (n >= 3 && g.edge_count() > 3 * g.vertex_count() - 6) REQUIRE(!planar);
        }
    }
}

TEST_CASE("agreement: randomized larger instances") {
    std::mt19937_64 rng(2026);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 8 + static_cast<int>(rng() % 10);
        double p = 0.05 + 0.5 * (static_cast<double>(rng() % 100) / 100.0);
        auto g = random_graph(n, p, rng);
        bool planar = is_planar(g);
        auto w = find_kuratowski(g);
        auto rs = planar_embedding(g);
        REQUIRE(planar == !w.has_value());
        REQUIRE(planar == rs.has_value());
        if (w) {
            auto check = validate_witness(g, *w);
            REQUIRE_MESSAGE(check.ok, check.reason);
            REQUIRE(!is_planar(w->subgraph()));
        }
        if (rs) REQUIRE(embedding_satisfies_euler(g, *rs));
    }
}

TEST_CASE("witness determinism") {
    auto g = disjoint_union(complete(6), petersen());
    auto w1 = find_kuratowski(g);
    auto w2 = find_kuratowski(g);
    REQUIRE(w1.has_value());
    REQUIRE(w2.has_value());
    CHECK(w1->branch_vertices == w2->branch_vertices);
    CHECK(w1->all_vertices() == w2->all_vertices());
}
