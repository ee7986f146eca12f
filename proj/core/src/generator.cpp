#include <algorithm>
#include <random>

#include "apex/pipeline.hpp"

namespace apex {

namespace {

// Subdivided-edge bookkeeping while the host is still an edge list.
struct HostBuilder {
    std::vector<Edge> edges;
    VertexId next_id;

    explicit HostBuilder(const HexGrid& grid) {
        for (const auto& [u, v] : grid.edges())
            edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
        next_id = static_cast<VertexId>(grid.vertex_count());
    }

    VertexId fresh() { return next_id++; }
};

} // namespace

PlantedInstance generate_planted_instance(std::size_t n, int k, std::uint64_t seed,
                                          ConstantsMode mode) {
    GeneratorOptions options;
    options.constants = mode;
    return generate_planted_instance(n, k, seed, options);
}

PlantedInstance generate_planted_instance(std::size_t n, int k, std::uint64_t seed,
                                          const GeneratorOptions& options) {
    if (k < 0) throw DomainError("generate_planted_instance: negative k");

    PlantedInstance inst;
    inst.k = k;

    // Pick the layout radius: paper constants, or the largest reduced tiling
    // that fits the vertex budget (one slack ring included).
    auto host_fits = [&](int r) {
        std::size_t base = static_cast<std::size_t>(6) * static_cast<std::size_t>(r + 1) *
                           static_cast<std::size_t>(r + 1);
        return base + static_cast<std::size_t>(k) <= n;
    };

    if (k >= 2) {
        if (options.constants == ConstantsMode::Paper) {
            inst.constants = paper_constants(k);
        } else {
            int q = 0;
            for (int probe = 1; probe < 64; ++probe) {
                if (host_fits(reduced_constants(k, probe).r))
                    q = probe;
                else
                    break;
            }
            if (q == 0)
                throw DomainError("generate_planted_instance: n too small for any zone tiling");
            inst.constants = reduced_constants(k, q);
        }
        if (!host_fits(inst.constants.r))
            throw DomainError("generate_planted_instance: n too small for the requested grid");
        inst.host_radius = inst.constants.r + 1;
    } else {
        // No reductions at k <= 1; a modest grid keeps instances interesting.
        int r = 3;
        while (host_fits(r + 1) && r < 64) ++r;
        if (!host_fits(r))
            throw DomainError("generate_planted_instance: n too small for the requested grid");
        inst.host_radius = r + 1;
        inst.constants = PhaseConstants{k, 0, 0, 0, r};
    }

    HexGrid grid(inst.host_radius);
    HostBuilder host(grid);
    std::mt19937_64 rng(seed);

    std::size_t budget = n - static_cast<std::size_t>(6) *
                                 static_cast<std::size_t>(inst.host_radius) *
                                 static_cast<std::size_t>(inst.host_radius) -
                         static_cast<std::size_t>(k);

    // Subdivide a random sample of grid edges (one or two extra vertices),
    // spending about half of the remaining vertex budget.
    std::size_t subdivision_budget = budget / 2;
    {
        std::vector<std::size_t> order(host.edges.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) {
            if (subdivision_budget == 0) break;
            auto [u, v] = host.edges[i];
            int extra = (rng() % 3 == 0 && subdivision_budget >= 2) ? 2 : 1;
            VertexId a = host.fresh();
            if (extra == 1) {
                host.edges[i] = {u, a};
                host.edges.emplace_back(a, v);
            } else {
                VertexId b = host.fresh();
                host.edges[i] = {u, a};
                host.edges.emplace_back(a, b);
                host.edges.emplace_back(b, v);
            }
            budget -= static_cast<std::size_t>(extra);
            subdivision_budget -= static_cast<std::size_t>(extra);
        }
    }

    // Cell-local planar noise: pendant paths and cell chords. Components
    // attach to vertices of a single cell, so zones stay flat until an apex
    // says otherwise. Anchor reuse is capped to keep grid degrees below the
    // planted apices'.
    {
        const auto& cells = grid.cells();
        std::vector<std::uint8_t> anchor_uses(grid.vertex_count(), 0);
        std::uniform_int_distribution<std::size_t> pick_cell(0, cells.size() - 1);
        std::size_t stuck = 0;
        while (budget > 0 && stuck < 64) {
            const auto& cell = cells[pick_cell(rng)];
            VertexId anchor_a = static_cast<VertexId>(cell.corners[rng() % 6]);
            if (anchor_uses[anchor_a] >= 2) {
                ++stuck;
                continue;
            }
            stuck = 0;
            ++anchor_uses[anchor_a];
            std::size_t len = 1 + rng() % 3;
            len = std::min<std::size_t>(len, budget);
            VertexId prev = anchor_a;
            for (std::size_t i = 0; i < len; ++i) {
                VertexId fresh = host.fresh();
                host.edges.emplace_back(prev, fresh);
                prev = fresh;
            }
            if (rng() % 2) {
                // close it back into the same cell: a cell-component cycle
                VertexId anchor_b = static_cast<VertexId>(cell.corners[rng() % 6]);
                if (anchor_b != anchor_a && anchor_uses[anchor_b] < 2) {
                    ++anchor_uses[anchor_b];
                    host.edges.emplace_back(prev, anchor_b);
                }
            }
            budget -= len;
        }
    }

    // Planted apices, wired to the center-cell corners of zone cores so each
    // one is well-attached; wiring every zone keeps no zone flat while the
    // apex is present.
    if (k >= 1) {
        std::vector<CellCoord> targets;
        std::size_t zone_count = k >= 2 ? static_cast<std::size_t>(inst.constants.z) : 0;
        if (k >= 2 && zone_count >= static_cast<std::size_t>(k) + 2) {
            HexGrid tiling(inst.constants.q);
            int stride = 4 * k + 9;
            int wired = 0;
            for (const auto& cell : tiling.cells()) {
                if (options.wire_zones >= 0 && wired >= options.wire_zones) break;
                targets.push_back({cell.axial.a * stride, cell.axial.b * stride});
                ++wired;
            }
        } else {
            // Too few zones for well-attachment; wire to four far-apart cells
            // so the apices are still genuine nonplanarity sources.
            int far = inst.host_radius - 2;
            targets = {{0, 0}, {far, 0}, {0, far}, {-far, far}};
        }

        for (int a = 0; a < k; ++a) {
            VertexId apex = host.fresh();
            inst.planted_apices.push_back(apex);
            for (const CellCoord& c : targets) {
                int cell_idx = grid.cell_at(c);
                if (cell_idx < 0) throw std::logic_error("generator: wire target off the host");
                const auto& cell = grid.cells()[static_cast<std::size_t>(cell_idx)];
                // two corners per cell, distinct across apices: the doubled
                // degree keeps planted vertices at the top of degree orderings
                // and tolerant of embedding offsets
                host.edges.emplace_back(apex, static_cast<VertexId>(cell.corners[
                    static_cast<std::size_t>((2 * a) % 6)]));
                host.edges.emplace_back(apex, static_cast<VertexId>(cell.corners[
                    static_cast<std::size_t>((2 * a + 3) % 6)]));
            }
        }
    }

    inst.graph = Graph::from_edges(host.edges);
    return inst;
}

} // namespace apex
