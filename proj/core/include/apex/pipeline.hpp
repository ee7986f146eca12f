#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apex/graph.hpp"
#include "apex/hexgrid.hpp"
#include "apex/solver.hpp"
#include "apex/zones.hpp"

namespace apex {

enum class ConstantsMode { Paper, Reduced };

enum class PipelineMode { Auto, ExactOnly };

struct PipelineConfig {
    PipelineMode mode = PipelineMode::Auto;
    ConstantsMode constants = ConstantsMode::Paper;
    int reduced_q = 2; // zone tiling radius when constants == Reduced
    SolverLimits solver;
    GridSearchBudget grid_search;
    int max_iterations = 0;          // 0 = uncapped
    std::int64_t time_budget_ms = 0; // 0 = uncapped
    int threads = 1;
};

struct PipelineEvent {
    int iteration = 0;
    std::string action; // grid-found | grid-miss | grid-skip | reduction-a |
                        // reduction-b | prefilter-reject | direct-solve |
                        // fallback | forced-stop | exact-fallback-original
    std::size_t vertices_before = 0;
    std::size_t vertices_after = 0;
    int zone_id = -1;
    std::vector<VertexId> removed;
};

struct PipelineLog {
    std::vector<PipelineEvent> events;

    bool saw(const std::string& action) const;
    int count(const std::string& action) const;
};

struct PipelineResult {
    ApexOutcome outcome;
    PipelineLog log;
};

// The full reduce-then-solve run: prefilter, the grid/zone reduction loop,
// then the exact endgame; the final answer is verified against the original
// graph before being returned.
PipelineResult run_pipeline(const Graph& g, int k, const PipelineConfig& config = {});

// Deterministic planted instance: a (possibly subdivided) hexagonal-grid base
// with one ring of slack, cell-local planar noise, and k extra vertices wired
// into zone cores so they are well-attached; the planted set is always a
// valid apex set.
struct GeneratorOptions {
    ConstantsMode constants = ConstantsMode::Reduced;
    // Zones each apex wires into: -1 wires every zone, which opens all zones
    // and steers the pipeline through a reduction-B iteration first.
    int wire_zones = -1;
};

struct PlantedInstance {
    Graph graph;
    std::vector<VertexId> planted_apices;
    int k = 0;
    PhaseConstants constants; // layout constants used for wiring (k >= 2)
    int host_radius = 0;      // constants.r + 1 slack ring
};

PlantedInstance generate_planted_instance(std::size_t n, int k, std::uint64_t seed,
                                          ConstantsMode mode);
PlantedInstance generate_planted_instance(std::size_t n, int k, std::uint64_t seed,
                                          const GeneratorOptions& options);

} // namespace apex
