#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "apex/graph.hpp"

namespace apex {

// Lattice coordinate of a grid corner. Cells are pointy-top hexagons at axial
// (a,b) with center (2a+b, 3b); corners live at exact integer offsets, so
// corners shared between neighboring cells coincide without rounding.
struct HexCoord {
    int x = 0;
    int y = 0;
    auto operator<=>(const HexCoord&) const = default;
};

// Axial coordinate of a cell; hex distance (|a|+|b|+|a+b|)/2.
struct CellCoord {
    int a = 0;
    int b = 0;
    auto operator<=>(const CellCoord&) const = default;
};

int hex_cell_distance(CellCoord u, CellCoord v);

// The radial hexagonal grid of radius r: cells at hex distance <= r-1 from
// the origin cell, enumerated center-out in a deterministic spiral. Vertices
// are the 6r^2 corners; concentric circle i holds the corners first seen on
// the boundary of the radius-i subgrid.
class HexGrid {
public:
    struct Cell {
        CellCoord axial;
        int ring = 0;                 // hex distance from the origin cell
        std::array<int, 6> corners{}; // cyclic order
    };

    explicit HexGrid(int radius);

    int radius() const { return radius_; }
    std::size_t vertex_count() const { return coords_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Cell>& cells() const { return cells_; }
    const std::vector<HexCoord>& coords() const { return coords_; }
    HexCoord coord(int v) const { return coords_[static_cast<std::size_t>(v)]; }
    int circle(int v) const { return circle_[static_cast<std::size_t>(v)]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& vertex_neighbors(int v) const {
        return adj_[static_cast<std::size_t>(v)];
    }
    std::size_t degree(int v) const { return adj_[static_cast<std::size_t>(v)].size(); }

    int vertex_at(HexCoord c) const;              // -1 if absent
    int cell_at(CellCoord c) const;               // -1 if absent
    int edge_index(int u, int v) const;           // -1 if absent
    const std::array<int, 6>& cell_edges(int cell) const {
        return cell_edges_[static_cast<std::size_t>(cell)];
    }

private:
    int radius_;
    std::vector<HexCoord> coords_;
    std::vector<int> circle_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
    std::map<std::pair<int, int>, int> edge_index_;
    std::vector<Cell> cells_;
    std::vector<std::array<int, 6>> cell_edges_;
    std::map<HexCoord, int> vertex_index_;
    std::map<CellCoord, int> cell_index_;
};

inline HexGrid build_hexgrid(int radius) { return HexGrid(radius); }

// The grid as a plain Graph on its own vertex ids.
Graph grid_to_graph(const HexGrid& grid);

// An embedding of the grid into a host graph: injective branch map plus one
// internally-disjoint host path per grid edge.
struct HexSubdivision {
    std::shared_ptr<const HexGrid> grid;
    std::vector<VertexId> branch_image;              // grid vertex -> host vertex
    std::vector<std::vector<VertexId>> edge_paths;   // grid edge -> host path

    std::vector<VertexId> all_host_vertices() const; // sorted, unique
    const std::vector<VertexId>& path_of(int u, int v) const;
};

struct SubdivisionCheck {
    bool ok = true;
    std::string reason;
};

// Independent validation: injectivity, path endpoints, internal disjointness,
// full edge coverage.
SubdivisionCheck validate_subdivision(const Graph& host, const HexSubdivision& sub);

struct GridSearchBudget {
    std::uint64_t max_steps = 4'000'000; // DFS expansions across the whole call
    int max_starts = 8;                  // candidate center vertices tried
    int max_alternatives = 4;            // routes kept per arc choice point
    int max_stretch = 8;                 // extra host edges allowed per arc
};

// Budget-bounded embedding search. none means not found within budget,
// never a certificate of absence. Deterministic for equal budgets.
std::optional<HexSubdivision> find_hex_subdivision(const Graph& g,
                                                   std::shared_ptr<const HexGrid> pattern,
                                                   const GridSearchBudget& budget = {});
std::optional<HexSubdivision> find_hex_subdivision(const Graph& g, int radius,
                                                   const GridSearchBudget& budget = {});

int rectangular_grid_threshold(int r);

// Host-graph vertex sets of the ball of cells within cell_radius of center.
// Inner vertices are those off the ball's outer circle. DomainError if the
// ball does not fit inside the host grid.
struct GridBall {
    std::vector<int> cells;
    std::vector<VertexId> vertices;     // sorted
    std::vector<VertexId> outer_circle; // sorted
    std::vector<VertexId> inner;        // sorted
};
GridBall grid_ball(const HexSubdivision& host, CellCoord center, int cell_radius);

// DOT dump with branch vertices highlighted.
std::string subdivision_to_dot(const Graph& host, const HexSubdivision& sub);

} // namespace apex
