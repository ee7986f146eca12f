#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apex/graph.hpp"
#include "apex/zones.hpp"

namespace apex {

// A sub-grid of R shaped like the radius-(k+3) grid; inner vertices are
// those off its outer circle. Blocks are pairwise vertex-disjoint.
struct Block {
    int id = 0;
    int zone_id = 0;
    CellCoord center;
    std::vector<VertexId> vertices;     // sorted
    std::vector<VertexId> inner;        // sorted
    std::vector<VertexId> outer_circle; // sorted
};

// One block per zone, centered; zones meet only in their outer circles and
// blocks sit strictly inside, so disjointness is structural.
std::vector<Block> enumerate_disjoint_blocks(const ZoneLayout& layout);

struct WellAttachedWitness {
    VertexId vertex = 0;
    std::vector<int> blocks;         // indices into the block list, distinct
    std::vector<PathInGraph> paths;  // paths[i]: vertex .. inner vertex of blocks[i]
};

struct WellAttachedCheck {
    bool ok = true;
    std::string reason;
};

// All defining conditions: k+2 distinct blocks, valid paths from the vertex
// to inner vertices, interiors outside R, pairwise intersection exactly the
// vertex. A zero-length path is allowed when the vertex itself is an inner
// vertex of the block.
WellAttachedCheck validate_well_attached(const Graph& g, const ZoneLayout& layout,
                                         std::span<const Block> blocks,
                                         const WellAttachedWitness& w);

// Maximum-cardinality set of paths from x to distinct groups, vertex-disjoint
// except at x, interiors avoiding `forbidden` and all group vertices; stops
// once `need` paths exist. paths[i] is the path serving groups[order[i]]; the
// group index is paired with each path. Unit-capacity flow underneath.
struct GroupPath {
    std::size_t group = 0;
    std::vector<VertexId> path; // x .. terminal
};
std::vector<GroupPath> disjoint_paths_to_groups(const Graph& g, VertexId x,
                                                std::span<const std::vector<VertexId>> groups,
                                                const std::vector<bool>& forbidden,
                                                std::size_t need);

std::optional<WellAttachedWitness> is_well_attached(const Graph& g, const ZoneLayout& layout,
                                                    std::span<const Block> blocks, VertexId x);

// Scans every vertex, cheap reachability prefilter first. Deterministic,
// ascending by vertex id; parallel over vertices when threads > 1.
std::vector<WellAttachedWitness> find_well_attached(const Graph& g, const ZoneLayout& layout,
                                                    std::span<const Block> blocks,
                                                    int threads = 1);

// Deletes the witnessed vertices; every witness is re-validated first and a
// failure is a DomainError.
Graph reduction_b(const Graph& g, const ZoneLayout& layout, std::span<const Block> blocks,
                  std::span<const WellAttachedWitness> witnesses);

std::string well_attached_json(const WellAttachedWitness& w, std::span<const Block> blocks);

} // namespace apex
