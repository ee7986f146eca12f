#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apex/planarity.hpp"
#include "apex/solver.hpp"
#include "support/builders.hpp"

using namespace apex;
using namespace apex::testsupport;

TEST_CASE("solve_exact basics") {
    auto planar = rect_grid(4, 4);
    auto out = solve_exact(planar, 0);
    CHECK(out.status == SolveStatus::Feasible);
    CHECK(out.apex_set.empty());

    out = solve_exact(complete(5), 1);
    CHECK(out.status == SolveStatus::Feasible);
    CHECK(out.apex_set.size() == 1);
    CHECK(verify_solution(complete(5), out.apex_set, 1));

    CHECK(solve_exact(complete(6), 1).status == SolveStatus::Infeasible);
    CHECK(solve_exact(complete(6), 1).justification == Justification::ExhaustedSearch);
    CHECK(solve_exact(complete(6), 2).status == SolveStatus::Feasible);
}

TEST_CASE("brute_force_oracle basics") {
    auto out = brute_force_oracle(complete_bipartite(3, 3), 1);
    CHECK(out.status == SolveStatus::Feasible);
    CHECK(out.apex_set.size() == 1);

    auto twin_k5 = disjoint_union(complete(5), complete(5));
    CHECK(brute_force_oracle(twin_k5, 1).status == SolveStatus::Infeasible);
    auto two = brute_force_oracle(twin_k5, 2);
    CHECK(two.status == SolveStatus::Feasible);
    CHECK(verify_solution(twin_k5, two.apex_set, 2));

    // lexicographic-first contract: K5 at k=1 yields vertex 0
    auto k5 = brute_force_oracle(complete(5), 1);
    CHECK(k5.apex_set == std::vector<VertexId>{0});

    CHECK_THROWS_AS(brute_force_oracle(complete(40), 4, 1000), ResourceError);
}

TEST_CASE("verify_solution") {
    CHECK(verify_solution(complete(5), std::vector<VertexId>{0}, 1));
    CHECK(!verify_solution(complete(5), std::vector<VertexId>{}, 1));
    CHECK(verify_solution(rect_grid(3, 3), std::vector<VertexId>{}, 0));
    CHECK_THROWS_AS(verify_solution(complete(5), std::vector<VertexId>{99}, 1), DomainError);
}

TEST_CASE("agreement: exhaustive 5-vertex sweep, k 0..2") {
    for (std::uint64_t mask = 0; mask < (1u << 10); ++mask) {
        auto g = graph_from_mask(5, mask);
        for (int k = 0; k <= 2; ++k) {
            auto fast = solve_exact(g, k);
            auto slow = brute_force_oracle(g, k);
            REQUIRE(fast.status == slow.status);
            if (fast.status == SolveStatus::Feasible)
                REQUIRE(verify_solution(g, fast.apex_set, k));
        }
    }
}

TEST_CASE("agreement: randomized up to 12 vertices, k up to 3") {
    std::mt19937_64 rng(123);
    for (int iter = 0; iter < 120; ++iter) {
        int n = 6 + static_cast<int>(rng() % 7);
        double p = 0.2 + 0.6 * (iter % 10) / 10.0;
        auto g = random_graph(n, p, rng);
        int k = static_cast<int>(rng() % 4);
        auto fast = solve_exact(g, k);
        auto slow = brute_force_oracle(g, k);
        CAPTURE(iter);
        REQUIRE(fast.status == slow.status);
        if (fast.status == SolveStatus::Feasible) REQUIRE(verify_solution(g, fast.apex_set, k));
    }
}

TEST_CASE("monotonicity: feasible at k stays feasible at k+1") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 60; ++iter) {
        auto g = random_graph(10, 0.5, rng);
        for (int k = 0; k < 3; ++k) {
            if (solve_exact(g, k).status == SolveStatus::Feasible)
                CHECK(solve_exact(g, k + 1).status == SolveStatus::Feasible);
        }
    }
}

TEST_CASE("resource limit surfaces as its own status") {
    SolverLimits limits;
    limits.max_nodes = 2;
    auto big = disjoint_union(disjoint_union(complete(6), complete(6)), complete(6));
    auto out = solve_exact(big, 3, limits);
    CHECK(out.status == SolveStatus::ResourceLimit);
    CHECK(out.justification == Justification::None);
}

TEST_CASE("determinism: identical outcomes across runs") {
    auto g = disjoint_union(complete(5), petersen());
    auto a = solve_exact(g, 2);
    auto b = solve_exact(g, 2);
    CHECK(a.status == b.status);
    CHECK(a.apex_set == b.apex_set);
    CHECK(a.stats.solver_nodes == b.stats.solver_nodes);
}

TEST_CASE("justification names") {
    CHECK(std::string(justification_name(Justification::EdgeBound)) == "edge-bound");
    CHECK(std::string(justification_name(Justification::ExhaustedSearch)) == "exhausted-search");
}
