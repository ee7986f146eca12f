#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apex/pipeline.hpp"
#include "apex/planarity.hpp"
#include "support/builders.hpp"

using namespace apex;
using namespace apex::testsupport;

namespace {

PipelineConfig reduced_config(int q, int threads = 1) {
    PipelineConfig cfg;
    cfg.constants = ConstantsMode::Reduced;
    cfg.reduced_q = q;
    cfg.threads = threads;
    return cfg;
}

} // namespace

TEST_CASE("planar graph at k=0: immediate feasible empty set") {
    auto res = run_pipeline(rect_grid(5, 5), 0);
    CHECK(res.outcome.status == SolveStatus::Feasible);
    CHECK(res.outcome.apex_set.empty());
    CHECK(res.log.saw("direct-solve"));
}

TEST_CASE("K5 plus a large planar grid at k=1: apex inside the K5 part") {
    auto g = disjoint_union(complete(5), rect_grid(8, 8));
    auto res = run_pipeline(g, 1);
    REQUIRE(res.outcome.status == SolveStatus::Feasible);
    REQUIRE(res.outcome.apex_set.size() == 1);
    CHECK(res.outcome.apex_set[0] < 5);
    CHECK(verify_solution(g, res.outcome.apex_set, 1));
}

TEST_CASE("edge-count prefilter fires at k>=2") {
    auto res = run_pipeline(complete(20), 2);
    CHECK(res.outcome.status == SolveStatus::Infeasible);
    CHECK(res.outcome.justification == Justification::EdgeBound);
    CHECK(res.log.saw("prefilter-reject"));
    // sound: the oracle agrees
    CHECK(brute_force_oracle(complete(20), 2).status == SolveStatus::Infeasible);
}

TEST_CASE("pipeline agrees with the oracle on small random graphs") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 80; ++iter) {
        int n = 4 + static_cast<int>(rng() % 7);
        auto g = random_graph(n, 0.25 + 0.5 * (iter % 8) / 8.0, rng);
        int k = static_cast<int>(rng() % 4);
        auto pipe = run_pipeline(g, k, reduced_config(2));
        auto slow = brute_force_oracle(g, k);
        CAPTURE(iter);
        REQUIRE(pipe.outcome.status == slow.status);
        if (pipe.outcome.status == SolveStatus::Feasible)
            REQUIRE(verify_solution(g, pipe.outcome.apex_set, k));
    }
}

TEST_CASE("generator: k=0 instances are planar and solved empty") {
    auto inst = generate_planted_instance(700, 0, 5, ConstantsMode::Reduced);
    CHECK(is_planar(inst.graph));
    auto res = run_pipeline(inst.graph, 0);
    CHECK(res.outcome.status == SolveStatus::Feasible);
    CHECK(res.outcome.apex_set.empty());
}

TEST_CASE("generator: planted singleton verifies at k=1") {
    auto inst = generate_planted_instance(700, 1, 6, ConstantsMode::Reduced);
    REQUIRE(inst.planted_apices.size() == 1);
    CHECK(verify_solution(inst.graph, inst.planted_apices, 1));
    CHECK(!is_planar(inst.graph));
    auto res = run_pipeline(inst.graph, 1);
    CHECK(res.outcome.status == SolveStatus::Feasible);
}

TEST_CASE("generator: determinism and seed separation") {
    auto a = generate_planted_instance(800, 2, 17, ConstantsMode::Reduced);
    auto b = generate_planted_instance(800, 2, 17, ConstantsMode::Reduced);
    auto c = generate_planted_instance(800, 2, 18, ConstantsMode::Reduced);
    CHECK(a.graph == b.graph);
    CHECK(!(a.graph == c.graph));
    CHECK(verify_solution(a.graph, a.planted_apices, 2));
    CHECK(verify_solution(c.graph, c.planted_apices, 2));
}

TEST_CASE("generator: n too small is a domain error") {
    CHECK_THROWS_AS(generate_planted_instance(50, 2, 1, ConstantsMode::Reduced), DomainError);
}

TEST_CASE("single-zone instance: fallback path stays exact") {
    // q=1 leaves no room for blocks, so the pipeline must fall through to the
    // solver and still find the planted pair.
    auto inst = generate_planted_instance(700, 2, 9, ConstantsMode::Reduced);
    REQUIRE(inst.constants.q == 1);
    auto res = run_pipeline(inst.graph, 2, reduced_config(1));
    REQUIRE(res.outcome.status == SolveStatus::Feasible);
    CHECK(verify_solution(inst.graph, res.outcome.apex_set, 2));
    CHECK(res.log.saw("fallback"));
}

TEST_CASE("seven-zone instance: reduction B then reduction A") {
    auto inst = generate_planted_instance(4500, 2, 42, ConstantsMode::Reduced);
    REQUIRE(inst.constants.q == 2);
    for (int threads : {1, 2}) {
        auto res = run_pipeline(inst.graph, 2, reduced_config(2, threads));
        REQUIRE(res.outcome.status == SolveStatus::Feasible);
        CHECK(verify_solution(inst.graph, res.outcome.apex_set, 2));
        CHECK(res.log.count("reduction-b") >= 1);
        CHECK(res.log.count("reduction-a") >= 1);
        CHECK(res.outcome.apex_set == inst.planted_apices);
        CHECK(res.outcome.forced_set == inst.planted_apices);
    }
}

TEST_CASE("partial wiring: reduction A happens with apices still present") {
    GeneratorOptions opt;
    opt.constants = ConstantsMode::Reduced;
    opt.wire_zones = 4;
    auto inst = generate_planted_instance(4500, 2, 43, opt);
    auto res = run_pipeline(inst.graph, 2, reduced_config(2));
    REQUIRE(res.outcome.status == SolveStatus::Feasible);
    CHECK(verify_solution(inst.graph, res.outcome.apex_set, 2));
    CHECK(res.log.count("reduction-a") >= 1);
}

TEST_CASE("pipeline determinism") {
    auto inst = generate_planted_instance(4500, 2, 77, ConstantsMode::Reduced);
    auto a = run_pipeline(inst.graph, 2, reduced_config(2));
    auto b = run_pipeline(inst.graph, 2, reduced_config(2));
    CHECK(a.outcome.status == b.outcome.status);
    CHECK(a.outcome.apex_set == b.outcome.apex_set);
    CHECK(a.log.events.size() == b.log.events.size());
}

TEST_CASE("resource limits propagate, never as infeasible") {
    PipelineConfig cfg;
    cfg.mode = PipelineMode::ExactOnly;
    cfg.solver.max_nodes = 2;
    auto g = disjoint_union(disjoint_union(complete(6), complete(6)), complete(6));
    auto res = run_pipeline(g, 3, cfg);
    CHECK(res.outcome.status == SolveStatus::ResourceLimit);
}

TEST_CASE("progress: every phase-one iteration shrinks the graph") {
    auto inst = generate_planted_instance(4500, 2, 99, ConstantsMode::Reduced);
    auto res = run_pipeline(inst.graph, 2, reduced_config(2));
    for (const auto& ev : res.log.events)
        if (ev.action == "reduction-a" || ev.action == "reduction-b")
            CHECK(ev.vertices_after < ev.vertices_before);
}
