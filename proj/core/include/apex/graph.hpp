#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "apex/errors.hpp"

namespace apex {

// Vertex ids are stable: subgraph operations never renumber survivors, so a
// vertex keeps the identity it had in the original input graph.
using VertexId = std::uint32_t;

constexpr VertexId kMaxVertexId = (1u << 26) - 1;

using Edge = std::pair<VertexId, VertexId>;

struct GraphBuildReport;

// Simple undirected graph over a fixed id universe [0, universe()).
// Immutable after construction; all "mutation" builds a new value.
class Graph {
public:
    Graph() = default;

    // Normalizes, deduplicates and drops self-loops. Every endpoint (and every
    // id in extra_vertices) becomes a present vertex.
    static GraphBuildReport build(std::span<const Edge> edges,
                                  std::span<const VertexId> extra_vertices = {});

    // Convenience for tests and generators: throws on loops/duplicates instead
    // of counting them.
    static Graph from_edges(std::span<const Edge> edges,
                            std::span<const VertexId> extra_vertices = {});

    std::size_t vertex_count() const { return n_present_; }
    std::size_t edge_count() const { return m_; }
    std::size_t universe() const { return adj_.size(); }

    bool has_vertex(VertexId v) const { return v < present_.size() && present_[v]; }
    bool has_edge(VertexId u, VertexId v) const;
    std::span<const VertexId> neighbors(VertexId v) const;
    std::size_t degree(VertexId v) const { return neighbors(v).size(); }

    std::vector<VertexId> vertices() const; // ascending
    std::vector<Edge> edges() const;        // (u,v) with u < v, lexicographic

    // Result keeps all ids; s must be a subset of the present vertices.
    Graph delete_vertices(std::span<const VertexId> s) const;
    Graph delete_vertex(VertexId v) const;

    // Induced subgraph on keep (must all be present). Ids preserved.
    Graph induced(std::span<const VertexId> keep) const;

    // Maximal connected vertex sets, ordered by smallest contained id;
    // vertices within a component ascend.
    std::vector<std::vector<VertexId>> connected_components() const;

    bool operator==(const Graph& other) const = default;

private:
    std::vector<std::vector<VertexId>> adj_; // sorted neighbor lists
    std::vector<bool> present_;
    std::size_t n_present_ = 0;
    std::size_t m_ = 0;
};

struct GraphBuildReport {
    Graph graph;
    std::size_t dropped_loops = 0;
    std::size_t dropped_duplicates = 0;
};

// A walk with pairwise-distinct vertices; consecutive entries must be adjacent
// in the host graph. Endpoints are vertices.front()/back().
struct PathInGraph {
    std::vector<VertexId> vertices;

    std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    VertexId front() const { return vertices.front(); }
    VertexId back() const { return vertices.back(); }
    std::span<const VertexId> interior() const;
    bool valid_in(const Graph& g) const;
};

// Sound rejection test: a reject outcome certifies that no k vertices can be
// deleted to reach planarity. Returns true on pass (instance survives).
bool edge_count_prefilter(const Graph& g, int k);

} // namespace apex
