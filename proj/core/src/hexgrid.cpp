#include "apex/hexgrid.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace apex {

namespace {

// Corner offsets of a pointy-top hexagon, cyclic: N, NE, SE, S, SW, NW.
constexpr std::array<HexCoord, 6> kCornerOffsets{{{0, 2}, {1, 1}, {1, -1}, {0, -2}, {-1, -1}, {-1, 1}}};

// Ring walk: start at (i, 0), then i steps in each of these directions.
constexpr std::array<CellCoord, 6> kRingDirs{{{-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}, {0, 1}}};

std::vector<CellCoord> spiral_cells(int radius) {
    std::vector<CellCoord> cells{{0, 0}};
    for (int ring = 1; ring <= radius - 1; ++ring) {
        CellCoord c{ring, 0};
        for (const CellCoord& d : kRingDirs)
            for (int step = 0; step < ring; ++step) {
                cells.push_back(c);
                c = {c.a + d.a, c.b + d.b};
            }
    }
    return cells;
}

} // namespace

int hex_cell_distance(CellCoord u, CellCoord v) {
    int da = u.a - v.a;
    int db = u.b - v.b;
    return (std::abs(da) + std::abs(db) + std::abs(da + db)) / 2;
}

HexGrid::HexGrid(int radius) : radius_(radius) {
    if (radius < 1) throw DomainError("HexGrid: radius must be >= 1");

    std::vector<CellCoord> order = spiral_cells(radius);
    cells_.reserve(order.size());

    for (const CellCoord& ax : order) {
        Cell cell;
        cell.axial = ax;
        cell.ring = hex_cell_distance(ax, {0, 0});
        HexCoord center{2 * ax.a + ax.b, 3 * ax.b};
        for (std::size_t i = 0; i < 6; ++i) {
            HexCoord corner{center.x + kCornerOffsets[i].x, center.y + kCornerOffsets[i].y};
            auto [it, fresh] = vertex_index_.try_emplace(corner, static_cast<int>(coords_.size()));
            if (fresh) {
                coords_.push_back(corner);
                circle_.push_back(cell.ring + 1);
            } else {
                circle_[static_cast<std::size_t>(it->second)] =
                    std::min(circle_[static_cast<std::size_t>(it->second)], cell.ring + 1);
            }
            cell.corners[i] = it->second;
        }
        cell_index_.emplace(ax, static_cast<int>(cells_.size()));
        cells_.push_back(cell);
    }

    adj_.resize(coords_.size());
    std::set<std::pair<int, int>> seen;
    for (const Cell& cell : cells_) {
        for (std::size_t i = 0; i < 6; ++i) {
            int u = cell.corners[i];
            int v = cell.corners[(i + 1) % 6];
            auto key = std::minmax(u, v);
            if (seen.insert({key.first, key.second}).second) {
                adj_[static_cast<std::size_t>(u)].push_back(v);
                adj_[static_cast<std::size_t>(v)].push_back(u);
            }
        }
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

    for (const auto& [u, v] : seen) {
        edge_index_.emplace(std::pair{u, v}, static_cast<int>(edges_.size()));
        edges_.emplace_back(u, v);
    }

    cell_edges_.resize(cells_.size());
    for (std::size_t c = 0; c < cells_.size(); ++c)
        for (std::size_t i = 0; i < 6; ++i) {
            int u = cells_[c].corners[i];
            int v = cells_[c].corners[(i + 1) % 6];
            cell_edges_[c][i] = edge_index(u, v);
        }
}

int HexGrid::vertex_at(HexCoord c) const {
    auto it = vertex_index_.find(c);
    return it == vertex_index_.end() ? -1 : it->second;
}

int HexGrid::cell_at(CellCoord c) const {
    auto it = cell_index_.find(c);
    return it == cell_index_.end() ? -1 : it->second;
}

int HexGrid::edge_index(int u, int v) const {
    auto key = std::minmax(u, v);
    auto it = edge_index_.find({key.first, key.second});
    return it == edge_index_.end() ? -1 : it->second;
}

std::vector<VertexId> HexSubdivision::all_host_vertices() const {
    std::vector<VertexId> out = branch_image;
    for (const auto& p : edge_paths) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const std::vector<VertexId>& HexSubdivision::path_of(int u, int v) const {
    int e = grid->edge_index(u, v);
    if (e < 0) throw DomainError("path_of: not a grid edge");
    return edge_paths[static_cast<std::size_t>(e)];
}

SubdivisionCheck validate_subdivision(const Graph& host, const HexSubdivision& sub) {
    auto fail = [](std::string why) { return SubdivisionCheck{false, std::move(why)}; };
    const HexGrid& grid = *sub.grid;

    if (sub.branch_image.size() != grid.vertex_count()) return fail("branch map size");
    if (sub.edge_paths.size() != grid.edge_count()) return fail("path map size");

    std::set<VertexId> branch_set;
    for (VertexId v : sub.branch_image) {
        if (!host.has_vertex(v)) return fail("branch image absent from host");
        if (!branch_set.insert(v).second) return fail("branch map not injective");
    }

    std::set<VertexId> interiors;
    for (std::size_t e = 0; e < sub.edge_paths.size(); ++e) {
        const auto& path = sub.edge_paths[e];
        auto [gu, gv] = grid.edges()[e];
        if (path.size() < 2) return fail("path too short");
        if (path.front() != sub.branch_image[static_cast<std::size_t>(gu)] ||
            path.back() != sub.branch_image[static_cast<std::size_t>(gv)])
            return fail("path endpoints mismatch grid edge " + std::to_string(e));
        PathInGraph p{std::vector<VertexId>(path.begin(), path.end())};
        if (!p.valid_in(host)) return fail("path invalid in host at grid edge " + std::to_string(e));
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            VertexId v = path[i];
            if (branch_set.count(v)) return fail("path interior hits a branch image");
            if (!interiors.insert(v).second) return fail("paths share interior vertex");
        }
    }
    return {};
}

GridBall grid_ball(const HexSubdivision& host, CellCoord center, int cell_radius) {
    const HexGrid& grid = *host.grid;
    GridBall ball;
    std::map<int, int> min_ring; // grid vertex -> smallest ring among ball cells

    for (std::size_t ci = 0; ci < grid.cells().size(); ++ci) {
        const auto& cell = grid.cells()[ci];
        int ring = hex_cell_distance(cell.axial, center);
        if (ring > cell_radius) continue;
        ball.cells.push_back(static_cast<int>(ci));
        for (int corner : cell.corners) {
            auto [it, fresh] = min_ring.try_emplace(corner, ring);
            if (!fresh) it->second = std::min(it->second, ring);
        }
        for (int e : grid.cell_edges(ci)) {
            const auto& path = host.edge_paths[static_cast<std::size_t>(e)];
            ball.vertices.insert(ball.vertices.end(), path.begin(), path.end());
        }
    }
    if (ball.cells.size() != static_cast<std::size_t>(3 * (cell_radius + 1) * cell_radius + 1))
        throw DomainError("grid_ball: ball does not fit inside the host grid");

    std::sort(ball.vertices.begin(), ball.vertices.end());
    ball.vertices.erase(std::unique(ball.vertices.begin(), ball.vertices.end()),
                        ball.vertices.end());

    for (const auto& [gv, ring] : min_ring)
        if (ring == cell_radius)
            ball.outer_circle.push_back(host.branch_image[static_cast<std::size_t>(gv)]);
    for (int ci : ball.cells) {
        const auto& cell = grid.cells()[static_cast<std::size_t>(ci)];
        if (hex_cell_distance(cell.axial, center) != cell_radius) continue;
        for (int e : grid.cell_edges(static_cast<std::size_t>(ci))) {
            auto [gu, gv] = grid.edges()[static_cast<std::size_t>(e)];
            if (min_ring.at(gu) != cell_radius || min_ring.at(gv) != cell_radius) continue;
            const auto& path = host.edge_paths[static_cast<std::size_t>(e)];
            for (std::size_t i = 1; i + 1 < path.size(); ++i)
                ball.outer_circle.push_back(path[i]);
        }
    }
    std::sort(ball.outer_circle.begin(), ball.outer_circle.end());
    ball.outer_circle.erase(std::unique(ball.outer_circle.begin(), ball.outer_circle.end()),
                            ball.outer_circle.end());

    std::set_difference(ball.vertices.begin(), ball.vertices.end(), ball.outer_circle.begin(),
                        ball.outer_circle.end(), std::back_inserter(ball.inner));
    return ball;
}

Graph grid_to_graph(const HexGrid& grid) {
    std::vector<Edge> edges;
    edges.reserve(grid.edge_count());
    for (const auto& [u, v] : grid.edges())
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    return Graph::from_edges(edges);
}

int rectangular_grid_threshold(int r) {
    if (r < 1) throw DomainError("rectangular_grid_threshold: r >= 1 required");
    return 6 * r - 5;
}

std::string subdivision_to_dot(const Graph& host, const HexSubdivision& sub) {
    (void)host;
    std::ostringstream out;
    out << "graph hexsubdivision {\n  node [shape=point];\n";
    std::set<VertexId> branch(sub.branch_image.begin(), sub.branch_image.end());
    for (VertexId v : branch)
        out << "  v" << v << " [color=red, shape=circle, label=\"" << v << "\"];\n";
    for (const auto& path : sub.edge_paths)
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            out << "  v" << path[i] << " -- v" << path[i + 1] << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace apex
