#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apex/treewidth.hpp"
#include "support/builders.hpp"

using namespace apex;
using namespace apex::testsupport;

namespace {

Graph star_tree(int n) { // a path with a few twigs; treewidth 1
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i)
        es.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
    return Graph::from_edges(es);
}

} // namespace

TEST_CASE("width_budget formula") {
    CHECK(width_budget(1, 0) == 13);
    CHECK(width_budget(2, 2) == 39);
    CHECK(width_budget(1, 1) == 14);
    CHECK_THROWS_AS(width_budget(0, 0), DomainError);
}

TEST_CASE("validate_decomposition basics") {
    auto g = path(3); // a-b-c on ids 0,1,2
    TreeDecomposition td;
    td.bags = {{0, 1}, {1, 2}};
    td.tree_edges = {{0, 1}};
    auto check = validate_decomposition(g, td);
    CHECK(check.valid);
    CHECK(td.width() == 1);

    TreeDecomposition bad;
    bad.bags = {{0}, {2}};
    bad.tree_edges = {{0, 1}};
    CHECK(!validate_decomposition(g, bad).valid);

    TreeDecomposition uncovered_edge;
    uncovered_edge.bags = {{0}, {1, 2}};
    uncovered_edge.tree_edges = {{0, 1}};
    auto bad_check = validate_decomposition(g, uncovered_edge);
    CHECK(!bad_check.valid);
    CHECK(bad_check.violation.find("edge") != std::string::npos);

    TreeDecomposition single;
    single.bags = {{0, 1, 2}};
    CHECK(validate_decomposition(g, single).valid);
    CHECK(single.width() == 2);
}

TEST_CASE("validate_decomposition: coherence violation detected") {
    auto g = path(3);
    TreeDecomposition td;
    td.bags = {{0, 1}, {1, 2}, {0, 1}}; // vertex 0 in bags 0 and 2, not adjacent
    td.tree_edges = {{0, 1}, {1, 2}};
    auto check = validate_decomposition(g, td);
    CHECK(!check.valid);
}

TEST_CASE("exact treewidth on known families") {
    CHECK(exact_treewidth(star_tree(8)) == 1);
    CHECK(exact_treewidth(cycle(7)) == 2);
    CHECK(exact_treewidth(complete(5)) == 4);
    CHECK(exact_treewidth(complete_bipartite(3, 3)) == 3);
    CHECK(exact_treewidth(rect_grid(3, 3)) == 3);
    CHECK(exact_treewidth(petersen()) == 4);
    CHECK(exact_treewidth(Graph{}) == -1);
}

TEST_CASE("heuristic_decompose: tree at target 1") {
    auto td = heuristic_decompose(star_tree(10), 1);
    REQUIRE(td.has_value());
    CHECK(td->width() == 1);
    CHECK(validate_decomposition(star_tree(10), *td).valid);
}

TEST_CASE("heuristic_decompose: 3x3 grid at target 3") {
    auto g = rect_grid(3, 3);
    auto td = heuristic_decompose(g, 3);
    REQUIRE(td.has_value());
    CHECK(td->width() == 3);
    CHECK(validate_decomposition(g, *td).valid);
}

TEST_CASE("heuristic_decompose: K5 cannot fit width 3") {
    CHECK(!heuristic_decompose(complete(5), 3).has_value());
}

TEST_CASE("heuristic_decompose: returned width never exceeds target") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 150; ++iter) {
        int n = 3 + static_cast<int>(rng() % 9);
        auto g = random_graph(n, 0.4, rng);
        int target = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        auto td = heuristic_decompose(g, target);
        if (td) {
            CHECK(td->width() <= target);
            CHECK(validate_decomposition(g, *td).valid);
        }
    }
}

TEST_CASE("heuristic matches exact treewidth at desk scale") {
    // Exhaustive to 6 vertices, randomized at 7 and 8.
    for (int n = 2; n <= 6; ++n) {
        std::uint64_t masks = 1ull << (n * (n - 1) / 2);
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            auto g = graph_from_mask(n, mask);
            int tw = exact_treewidth(g);
            auto td = heuristic_decompose(g, tw);
            REQUIRE(td.has_value());
            REQUIRE(td->width() <= tw);
            REQUIRE(validate_decomposition(g, *td).valid);
        }
    }
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 400; ++iter) {
        int n = 7 + static_cast<int>(rng() % 2);
        auto g = random_graph(n, 0.2 + 0.6 * (iter % 10) / 10.0, rng);
        int tw = exact_treewidth(g);
        auto td = heuristic_decompose(g, tw);
        REQUIRE(td.has_value());
        REQUIRE(validate_decomposition(g, *td).valid);
    }
}

TEST_CASE("td format round shape") {
    auto g = path(3);
    auto td = heuristic_decompose(g, 1);
    REQUIRE(td.has_value());
    std::string dump = to_td_format(g, *td);
    CHECK(dump.find("s td ") == 0);
    CHECK(dump.find("b 1") != std::string::npos);
}
