#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apex/graph.hpp"
#include "apex/hexgrid.hpp"

namespace apex {

// The constant chain tying a deletion budget k to the grid radius the
// reductions need: d bounds the disjoint blocks reachable from one vertex
// through grid-components, z the zone count, q the zone tiling radius, and
// r the host grid radius.
struct PhaseConstants {
    int k = 0;
    int d = 0;
    int z = 0;
    int q = 0;
    int r = 0;
};

PhaseConstants paper_constants(int k); // k >= 2

// Same layout arithmetic with a caller-chosen tiling radius q; zone size
// stays 2k+5 so the ring structure the reductions rely on is intact, only
// the zone count shrinks. Used by tests and the generator at desk scale.
PhaseConstants reduced_constants(int k, int q);

int radius_for(int k); // paper_constants(k).r

// One zone: a sub-grid of the host subdivision shaped like the radius-(2k+5)
// grid, with its core (radius 2k+3), concentric rings of cells, and outer
// circle, all in host-graph vertex ids.
struct Zone {
    int id = 0;
    CellCoord center;
    std::vector<int> cells;                            // host-grid cell indices
    std::vector<int> cell_ring;                        // parallel to cells
    std::vector<VertexId> vertices;                    // sorted
    std::vector<VertexId> core_vertices;               // sorted
    std::vector<VertexId> outer_circle;                // sorted
    std::vector<std::vector<VertexId>> ring_vertices;  // ring 0..2k+4, sorted
};

struct ZoneLayout {
    HexSubdivision host;
    int k = 0;
    int q = 0;
    std::vector<Zone> zones;
    std::vector<VertexId> r_vertices; // sorted union of zone vertices
    std::vector<Edge> r_edges;        // sorted host edges covered by zones

    bool in_r(VertexId v) const;
    bool r_has_edge(VertexId u, VertexId v) const;
};

// Tiles zones over the host grid: zone centers at the cells of the radius-q
// grid scaled by 4k+9, so neighboring zones meet exactly in their outer
// circles. The host grid radius must match the constants' r.
ZoneLayout layout_zones(const HexSubdivision& host, int k);        // paper q
ZoneLayout layout_zones(const HexSubdivision& host, int k, int q); // explicit q

enum class ComponentKind { SingleEdge, Component };

// A chord between R-vertices, or a connected component of G - R, plus the
// R-vertices it attaches to.
struct GridComponent {
    ComponentKind kind = ComponentKind::Component;
    std::vector<VertexId> vertices; // empty for a chord
    Edge chord{0, 0};
    std::vector<VertexId> attachments; // sorted
};

std::vector<GridComponent> grid_components(const Graph& g, const ZoneLayout& layout);

enum class ZoneState { Open, Closed };

ZoneState classify_zone(const Graph& g, const ZoneLayout& layout, const Zone& zone);

// T(H): the subgraph induced by H plus the grid-components attached only to
// H. Components with no attachments at all stay out of every proper T.
Graph induced_with_components(const Graph& g, const ZoneLayout& layout,
                              std::span<const VertexId> h_vertices);

bool is_flat(const Graph& g, const ZoneLayout& layout, const Zone& zone);

// Deletes T(R_0) of a flat zone. DomainError when the zone is not flat.
Graph reduction_a(const Graph& g, const ZoneLayout& layout, const Zone& flat_zone);

// Shared-component batch used by the pipeline's zone scan.
struct ZoneAnalysis {
    std::vector<GridComponent> components;
    std::vector<ZoneState> state;
    std::vector<bool> flat;
};

ZoneAnalysis analyze_zones(const Graph& g, const ZoneLayout& layout, int threads = 1);

// How a component sits against one zone, for diagnostics.
enum class AttachmentKind { EdgeComponent, CellComponent, Other };
AttachmentKind attachment_kind(const ZoneLayout& layout, const Zone& zone,
                               std::span<const VertexId> attachments);

std::string zone_diagnostics_json(const Graph& g, const ZoneLayout& layout);

} // namespace apex
