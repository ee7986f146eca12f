#include "apex/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "apex/planarity.hpp"
#include "apex/treewidth.hpp"
#include "apex/wellattached.hpp"

namespace apex {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

struct Runner {
    const Graph& original;
    int k;
    PipelineConfig config;
    Clock::time_point t0 = Clock::now();
    PipelineResult res;

    bool out_of_time() const {
        return config.time_budget_ms > 0 && elapsed_ms(t0) > config.time_budget_ms;
    }

    std::int64_t remaining_ms() const {
        if (config.time_budget_ms <= 0) return 0;
        return std::max<std::int64_t>(1, config.time_budget_ms - elapsed_ms(t0));
    }

    SolverLimits solver_limits() const {
        SolverLimits limits = config.solver;
        if (config.time_budget_ms > 0) {
            std::int64_t rem = remaining_ms();
            limits.time_budget_ms =
                limits.time_budget_ms > 0 ? std::min(limits.time_budget_ms, rem) : rem;
        }
        return limits;
    }

    void log(int iteration, std::string action, std::size_t before, std::size_t after,
             int zone_id = -1, std::vector<VertexId> removed = {}) {
        res.log.events.push_back(
            {iteration, std::move(action), before, after, zone_id, std::move(removed)});
    }

    PipelineResult finish(ApexOutcome outcome) {
        res.outcome = std::move(outcome);
        res.outcome.stats.iterations = 0;
        for (const auto& ev : res.log.events)
            res.outcome.stats.iterations = std::max(res.outcome.stats.iterations, ev.iteration);
        res.outcome.stats.reductions_a = res.log.count("reduction-a");
        res.outcome.stats.reductions_b = res.log.count("reduction-b");
        res.outcome.stats.wall_ms = elapsed_ms(t0);
        return std::move(res);
    }

    PipelineResult feasible_checked(std::vector<VertexId> apex_set, std::vector<VertexId> forced,
                                    SolveStats stats) {
        if (!verify_solution(original, apex_set, k))
            throw std::logic_error("pipeline: feasible outcome failed final verification");
        ApexOutcome out;
        out.status = SolveStatus::Feasible;
        out.apex_set = std::move(apex_set);
        out.forced_set = std::move(forced);
        out.stats = stats;
        return finish(std::move(out));
    }

    PipelineResult run() {
        if (k < 0) throw DomainError("run_pipeline: negative budget");

        // The reductions assume a nontrivial budget; tiny budgets go straight
        // to the exact search.
        if (k <= 1 || config.mode == PipelineMode::ExactOnly) {
            log(0, "direct-solve", original.vertex_count(), original.vertex_count());
            ApexOutcome out = solve_exact(original, k, solver_limits());
            if (out.status == SolveStatus::Feasible)
                return feasible_checked(out.apex_set, {}, out.stats);
            return finish(std::move(out));
        }

        if (!edge_count_prefilter(original, k)) {
            log(0, "prefilter-reject", original.vertex_count(), original.vertex_count());
            ApexOutcome out;
            out.status = SolveStatus::Infeasible;
            out.justification = Justification::EdgeBound;
            return finish(std::move(out));
        }

        PhaseConstants consts = config.constants == ConstantsMode::Paper
                                    ? paper_constants(k)
                                    : reduced_constants(k, config.reduced_q);
        const bool paper = config.constants == ConstantsMode::Paper;
        const std::size_t grid_size = static_cast<std::size_t>(6) *
                                      static_cast<std::size_t>(consts.r) *
                                      static_cast<std::size_t>(consts.r);

        Graph current = original;
        std::vector<VertexId> forced;
        bool untrusted_forcing = false;
        std::shared_ptr<const HexGrid> pattern;
        std::uint64_t solver_nodes = 0;
        int iteration = 0;

        while (true) {
            ++iteration;
            if (out_of_time() ||
                (config.max_iterations > 0 && iteration > config.max_iterations)) {
                ApexOutcome out;
                out.status = SolveStatus::ResourceLimit;
                return finish(std::move(out));
            }

            if (current.vertex_count() < grid_size) {
                log(iteration, "grid-skip", current.vertex_count(), current.vertex_count());
                break;
            }
            if (!pattern) pattern = std::make_shared<HexGrid>(consts.r);

            auto sub = find_hex_subdivision(current, pattern, config.grid_search);
            if (!sub) {
                log(iteration, "grid-miss", current.vertex_count(), current.vertex_count());
                break;
            }
            log(iteration, "grid-found", current.vertex_count(), current.vertex_count());

            ZoneLayout layout = layout_zones(*sub, k, consts.q);
            ZoneAnalysis analysis = analyze_zones(current, layout, config.threads);

            int flat_zone = -1;
            for (std::size_t zi = 0; zi < analysis.flat.size(); ++zi)
                if (analysis.flat[zi]) {
                    flat_zone = static_cast<int>(zi);
                    break;
                }
            if (flat_zone >= 0) {
                std::size_t before = current.vertex_count();
                current = reduction_a(current, layout, layout.zones[static_cast<std::size_t>(flat_zone)]);
                log(iteration, "reduction-a", before, current.vertex_count(), flat_zone);
                if (current.vertex_count() >= before)
                    throw std::logic_error("pipeline: reduction made no progress");
                continue;
            }

            auto blocks = enumerate_disjoint_blocks(layout);
            auto witnesses = find_well_attached(current, layout, blocks, config.threads);

            if (witnesses.empty()) {
                if (paper) {
                    log(iteration, "forced-stop", current.vertex_count(), current.vertex_count());
                    ApexOutcome out;
                    out.status = SolveStatus::Infeasible;
                    out.justification = Justification::NoFlatZoneNoWellAttached;
                    out.forced_set = forced;
                    return finish(std::move(out));
                }
                log(iteration, "fallback", current.vertex_count(), current.vertex_count());
                break;
            }

            if (forced.size() + witnesses.size() > static_cast<std::size_t>(k)) {
                if (paper) {
                    log(iteration, "forced-stop", current.vertex_count(), current.vertex_count());
                    ApexOutcome out;
                    out.status = SolveStatus::Infeasible;
                    out.justification = Justification::ForcedExceedsK;
                    out.forced_set = forced;
                    return finish(std::move(out));
                }
                log(iteration, "fallback", current.vertex_count(), current.vertex_count());
                break;
            }

            std::size_t before = current.vertex_count();
            std::vector<VertexId> removed;
            for (const auto& w : witnesses) removed.push_back(w.vertex);
            current = reduction_b(current, layout, blocks, witnesses);
            forced.insert(forced.end(), removed.begin(), removed.end());
            std::sort(forced.begin(), forced.end());
            if (!paper) untrusted_forcing = true;
            log(iteration, "reduction-b", before, current.vertex_count(), -1, std::move(removed));
            if (current.vertex_count() >= before)
                throw std::logic_error("pipeline: reduction made no progress");
        }

        // Diagnostics only: a decomposition attempt at the dichotomy width.
        if (current.vertex_count() <= 50'000) {
            auto td = heuristic_decompose(current, width_budget(consts.r, k));
            log(iteration, td ? "decompose-hit" : "decompose-miss", current.vertex_count(),
                current.vertex_count());
        }

        const int k_rest = k - static_cast<int>(forced.size());
        ApexOutcome endgame = solve_exact(current, k_rest, solver_limits());
        solver_nodes += endgame.stats.solver_nodes;

        if (endgame.status == SolveStatus::Feasible) {
            std::vector<VertexId> apex = forced;
            apex.insert(apex.end(), endgame.apex_set.begin(), endgame.apex_set.end());
            std::sort(apex.begin(), apex.end());
            SolveStats stats = endgame.stats;
            stats.solver_nodes = solver_nodes;
            return feasible_checked(std::move(apex), std::move(forced), stats);
        }
        if (endgame.status == SolveStatus::ResourceLimit) {
            endgame.stats.solver_nodes = solver_nodes;
            return finish(std::move(endgame));
        }

        // Reduced-constants forcing is not backed by the counting argument, so
        // an infeasible endgame after it is re-decided on the original graph.
        if (untrusted_forcing) {
            log(iteration, "exact-fallback-original", original.vertex_count(),
                original.vertex_count());
            ApexOutcome redo = solve_exact(original, k, solver_limits());
            redo.stats.solver_nodes += solver_nodes;
            if (redo.status == SolveStatus::Feasible)
                return feasible_checked(redo.apex_set, {}, redo.stats);
            return finish(std::move(redo));
        }

        ApexOutcome out;
        out.status = SolveStatus::Infeasible;
        out.justification = Justification::ExhaustedSearch;
        out.forced_set = forced;
        out.stats = endgame.stats;
        out.stats.solver_nodes = solver_nodes;
        return finish(std::move(out));
    }
};

} // namespace

bool PipelineLog::saw(const std::string& action) const {
    for (const auto& ev : events)
        if (ev.action == action) return true;
    return false;
}

int PipelineLog::count(const std::string& action) const {
    int n = 0;
    for (const auto& ev : events)
        if (ev.action == action) ++n;
    return n;
}

PipelineResult run_pipeline(const Graph& g, int k, const PipelineConfig& config) {
    Runner runner{g, k, config};
    return runner.run();
}

} // namespace apex
