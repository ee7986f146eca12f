#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "apex/wellattached.hpp"
#include "support/builders.hpp"
#include "support/pathsets.hpp"

using namespace apex;
using namespace apex::testsupport;

namespace {

struct Fixture {
    HexSubdivision host;
    ZoneLayout layout;
    Graph base;
    std::vector<Block> blocks;
};

Fixture make_fixture(int k, int q) {
    Fixture f;
    auto c = reduced_constants(k, q);
    auto grid = std::make_shared<HexGrid>(c.r);
    f.base = grid_to_graph(*grid);
    auto sub = find_hex_subdivision(f.base, grid);
    REQUIRE(sub.has_value());
    f.host = *sub;
    f.layout = layout_zones(f.host, k, q);
    f.blocks = enumerate_disjoint_blocks(f.layout);
    return f;
}

} // namespace

TEST_CASE("blocks: one per zone, disjoint, correctly sized") {
    auto f = make_fixture(2, 2);
    REQUIRE(f.blocks.size() == 7);
    for (const Block& b : f.blocks) {
        // radius-5 grid: 150 vertices, outer circle 54
        CHECK(b.vertices.size() == 150);
        CHECK(b.outer_circle.size() == 54);
        CHECK(b.inner.size() == 96);
        std::vector<VertexId> merged;
        std::set_union(b.inner.begin(), b.inner.end(), b.outer_circle.begin(),
                       b.outer_circle.end(), std::back_inserter(merged));
        CHECK(merged == b.vertices);
    }
    for (std::size_t i = 0; i < f.blocks.size(); ++i)
        for (std::size_t j = i + 1; j < f.blocks.size(); ++j) {
            std::vector<VertexId> shared;
            std::set_intersection(f.blocks[i].vertices.begin(), f.blocks[i].vertices.end(),
                                  f.blocks[j].vertices.begin(), f.blocks[j].vertices.end(),
                                  std::back_inserter(shared));
            CHECK(shared.empty());
        }
}

TEST_CASE("is_well_attached: planted apex with k+2 direct edges") {
    auto f = make_fixture(2, 2);
    auto es = f.base.edges();
    VertexId apex = static_cast<VertexId>(f.base.universe());
    for (int bi = 0; bi < 4; ++bi) es.emplace_back(apex, f.blocks[static_cast<std::size_t>(bi)].inner[0]);
    auto g = Graph::from_edges(es);

    auto w = is_well_attached(g, f.layout, f.blocks, apex);
    REQUIRE(w.has_value());
    CHECK(w->vertex == apex);
    CHECK(w->blocks.size() == 4);
    auto check = validate_well_attached(g, f.layout, f.blocks, *w);
    CHECK_MESSAGE(check.ok, check.reason);
    for (const auto& p : w->paths) CHECK(p.length() == 1);
}

TEST_CASE("is_well_attached: k+1 connections are not enough") {
    auto f = make_fixture(2, 2);
    auto es = f.base.edges();
    VertexId apex = static_cast<VertexId>(f.base.universe());
    for (int bi = 0; bi < 3; ++bi) es.emplace_back(apex, f.blocks[static_cast<std::size_t>(bi)].inner[0]);
    auto g = Graph::from_edges(es);
    CHECK(!is_well_attached(g, f.layout, f.blocks, apex).has_value());
}

TEST_CASE("is_well_attached: isolated vertex has no witness") {
    auto f = make_fixture(2, 2);
    std::vector<VertexId> extra{static_cast<VertexId>(f.base.universe())};
    auto g = Graph::from_edges(f.base.edges(), extra);
    CHECK(!is_well_attached(g, f.layout, f.blocks, extra[0]).has_value());
}

TEST_CASE("is_well_attached: paths through longer components and interior reuse rules") {
    auto f = make_fixture(2, 2);
    auto es = f.base.edges();
    VertexId next = static_cast<VertexId>(f.base.universe());
    VertexId apex = next++;
    // two direct edges, two length-2 paths through fresh midpoints
    es.emplace_back(apex, f.blocks[0].inner[0]);
    es.emplace_back(apex, f.blocks[1].inner[0]);
    for (int bi = 2; bi < 4; ++bi) {
        VertexId mid = next++;
        es.emplace_back(apex, mid);
        es.emplace_back(mid, f.blocks[static_cast<std::size_t>(bi)].inner[0]);
    }
    auto g = Graph::from_edges(es);
    auto w = is_well_attached(g, f.layout, f.blocks, apex);
    REQUIRE(w.has_value());
    auto check = validate_well_attached(g, f.layout, f.blocks, *w);
    CHECK_MESSAGE(check.ok, check.reason);

    // interiors must avoid R: reroute one wire through a grid vertex instead
    auto es2 = f.base.edges();
    VertexId apex2 = static_cast<VertexId>(f.base.universe());
    es2.emplace_back(apex2, f.blocks[0].inner[0]);
    es2.emplace_back(apex2, f.blocks[1].inner[0]);
    es2.emplace_back(apex2, f.blocks[2].inner[0]);
    // path to block 3 passes through an R vertex: does not count
    es2.emplace_back(apex2, f.blocks[3].outer_circle[0]);
    auto g2 = Graph::from_edges(es2);
    CHECK(!is_well_attached(g2, f.layout, f.blocks, apex2).has_value());
}

TEST_CASE("grid vertices near one block are not well-attached") {
    auto f = make_fixture(2, 2);
    auto g = f.base;
    for (VertexId x : {f.layout.r_vertices[0], f.layout.r_vertices[100]})
        CHECK(!is_well_attached(g, f.layout, f.blocks, x).has_value());
}

TEST_CASE("find_well_attached: scan finds exactly the planted apices") {
    auto f = make_fixture(2, 2);
    auto es = f.base.edges();
    VertexId a1 = static_cast<VertexId>(f.base.universe());
    VertexId a2 = a1 + 1;
    for (int bi = 0; bi < 4; ++bi) es.emplace_back(a1, f.blocks[static_cast<std::size_t>(bi)].inner[2]);
    for (int bi = 3; bi < 7; ++bi) es.emplace_back(a2, f.blocks[static_cast<std::size_t>(bi)].inner[4]);
    auto g = Graph::from_edges(es);

    for (int threads : {1, 2}) {
        auto found = find_well_attached(g, f.layout, f.blocks, threads);
        REQUIRE(found.size() == 2);
        CHECK(found[0].vertex == a1);
        CHECK(found[1].vertex == a2);
    }
}

TEST_CASE("reduction_b removes witnessed vertices and rejects bad witnesses") {
    auto f = make_fixture(2, 2);
    auto es = f.base.edges();
    VertexId apex = static_cast<VertexId>(f.base.universe());
    for (int bi = 0; bi < 4; ++bi) es.emplace_back(apex, f.blocks[static_cast<std::size_t>(bi)].inner[0]);
    auto g = Graph::from_edges(es);

    auto found = find_well_attached(g, f.layout, f.blocks, 1);
    REQUIRE(found.size() == 1);
    auto g2 = reduction_b(g, f.layout, f.blocks, found);
    CHECK(!g2.has_vertex(apex));
    CHECK(g2.vertex_count() == g.vertex_count() - 1);

    auto bogus = found;
    bogus[0].paths[0].vertices.push_back(9999999); // corrupt
    CHECK_THROWS_AS(reduction_b(g, f.layout, f.blocks, bogus), DomainError);
}

TEST_CASE("flow agrees with exhaustive disjoint-path search on small graphs") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 6 + static_cast<int>(rng() % 7); // up to 12
        auto g = random_graph(n, 0.35, rng);
        VertexId x = 0;

        // 2-4 random disjoint singleton/pair groups among the other vertices
        std::vector<VertexId> others;
        for (VertexId v = 1; v < static_cast<VertexId>(n); ++v) others.push_back(v);
        std::shuffle(others.begin(), others.end(), rng);
        std::size_t n_groups = 2 + rng() % 3;
        std::vector<std::vector<VertexId>> groups;
        std::size_t at = 0;
        for (std::size_t gi = 0; gi < n_groups && at < others.size(); ++gi) {
            std::vector<VertexId> grp{others[at++]};
            if (rng() % 2 && at < others.size()) grp.push_back(others[at++]);
            std::sort(grp.begin(), grp.end());
            groups.push_back(grp);
        }
        std::vector<bool> forbidden(g.universe(), false);
        if (at < others.size() && rng() % 2) forbidden[others[at]] = true;

        auto flow_paths =
            disjoint_paths_to_groups(g, x, groups, forbidden, groups.size());
        GroupPathOracle oracle(g, x, groups, forbidden);
        int brute = oracle.max_paths();
        CAPTURE(iter);
        CHECK(static_cast<int>(flow_paths.size()) == brute);

        // sanity on returned paths
        std::set<VertexId> seen;
        std::set<std::size_t> used_groups;
        for (const auto& gp : flow_paths) {
            CHECK(used_groups.insert(gp.group).second);
            CHECK(gp.path.front() == x);
            CHECK(std::binary_search(groups[gp.group].begin(), groups[gp.group].end(),
                                     gp.path.back()));
            for (std::size_t i = 0; i + 1 < gp.path.size(); ++i)
                CHECK(g.has_edge(gp.path[i], gp.path[i + 1]));
            for (std::size_t i = 1; i < gp.path.size(); ++i) CHECK(seen.insert(gp.path[i]).second);
            for (std::size_t i = 1; i + 1 < gp.path.size(); ++i) CHECK(!forbidden[gp.path[i]]);
        }
    }
}

TEST_CASE("witness json shape") {
    auto f = make_fixture(2, 2);
    auto es = f.base.edges();
    VertexId apex = static_cast<VertexId>(f.base.universe());
    for (int bi = 0; bi < 4; ++bi) es.emplace_back(apex, f.blocks[static_cast<std::size_t>(bi)].inner[0]);
    auto g = Graph::from_edges(es);
    auto w = is_well_attached(g, f.layout, f.blocks, apex);
    REQUIRE(w.has_value());
    auto json = well_attached_json(*w, f.blocks);
    CHECK(json.find("\"vertex\"") != std::string::npos);
    CHECK(json.find("\"paths\"") != std::string::npos);
}
