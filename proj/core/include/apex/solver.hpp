#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "apex/graph.hpp"

namespace apex {

enum class SolveStatus { Feasible, Infeasible, ResourceLimit };

enum class Justification {
    None,
    EdgeBound,                // edge-count prefilter rejected the instance
    ForcedExceedsK,           // forced vertices alone exceed the budget
    NoFlatZoneNoWellAttached, // full zone layout with neither reduction available
    ExhaustedSearch           // the exact search proved no set works
};

const char* justification_name(Justification j);

struct SolveStats {
    std::uint64_t solver_nodes = 0;
    int iterations = 0;
    int reductions_a = 0;
    int reductions_b = 0;
    std::int64_t wall_ms = 0;
};

// Solution certificate: a feasible outcome always carries a set X with
// |X| <= k and G - X planar; an infeasible one names its justification.
struct ApexOutcome {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<VertexId> apex_set;   // sorted; meaningful when feasible
    std::vector<VertexId> forced_set; // vertices forced by reductions
    Justification justification = Justification::None;
    SolveStats stats;
};

struct SolverLimits {
    std::uint64_t max_nodes = 50'000'000;
    std::int64_t time_budget_ms = 0; // 0 = unlimited; wall-clock cutoffs are opt-in
};

// Exact decision procedure: every nonplanar graph contains a K5/K3,3
// subdivision and any apex set must hit each of them, so branching on the
// vertices of one witness per node explores every solution. Depth is capped
// at k; infeasible means no set of at most k vertices works.
ApexOutcome solve_exact(const Graph& g, int k, const SolverLimits& limits = {});

// Ground truth by enumeration of all vertex subsets of size <= k in
// lexicographic order (sizes ascending). ResourceError when the subset count
// exceeds the cap.
ApexOutcome brute_force_oracle(const Graph& g, int k, std::uint64_t max_subsets = 20'000'000);

bool verify_solution(const Graph& g, std::span<const VertexId> x, int k);

} // namespace apex
