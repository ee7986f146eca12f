#include "apex/zones.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "apex/planarity.hpp"

namespace apex {

namespace {

void sort_unique(std::vector<VertexId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool subset_of(std::span<const VertexId> a, const std::vector<VertexId>& sorted_b) {
    for (VertexId v : a)
        if (!std::binary_search(sorted_b.begin(), sorted_b.end(), v)) return false;
    return true;
}

} // namespace

PhaseConstants paper_constants(int k) {
    if (k < 2) throw DomainError("paper_constants: k >= 2 required");
    PhaseConstants c;
    c.k = k;
    c.d = (k + 1) * ((k + 1) * (k + 1) - 1);
    c.z = 7 * k + k * (k + 1) * (k + 1) + k * c.d + 1;
    int q = 1;
    while (3 * q * (q - 1) + 1 < c.z) ++q;
    c.q = q;
    c.r = (q - 1) * (4 * k + 9) + (2 * k + 5);
    return c;
}

PhaseConstants reduced_constants(int k, int q) {
    if (k < 2) throw DomainError("reduced_constants: k >= 2 required");
    if (q < 1) throw DomainError("reduced_constants: q >= 1 required");
    PhaseConstants c;
    c.k = k;
    c.d = (k + 1) * ((k + 1) * (k + 1) - 1);
    c.z = 3 * q * (q - 1) + 1; // every zone the tiling provides
    c.q = q;
    c.r = (q - 1) * (4 * k + 9) + (2 * k + 5);
    return c;
}

int radius_for(int k) { return paper_constants(k).r; }

bool ZoneLayout::in_r(VertexId v) const {
    return std::binary_search(r_vertices.begin(), r_vertices.end(), v);
}

bool ZoneLayout::r_has_edge(VertexId u, VertexId v) const {
    Edge e{std::min(u, v), std::max(u, v)};
    return std::binary_search(r_edges.begin(), r_edges.end(), e);
}

ZoneLayout layout_zones(const HexSubdivision& host, int k) {
    return layout_zones(host, k, paper_constants(k).q);
}

ZoneLayout layout_zones(const HexSubdivision& host, int k, int q) {
    PhaseConstants c = reduced_constants(k, q);
    const HexGrid& grid = *host.grid;
    if (grid.radius() != c.r)
        throw DomainError("layout_zones: host grid radius " + std::to_string(grid.radius()) +
                          " does not match required " + std::to_string(c.r));

    ZoneLayout layout;
    layout.host = host;
    layout.k = k;
    layout.q = q;

    const int m = 2 * k + 5;     // zone radius in cells: ring 0..m-1
    const int stride = 4 * k + 9;

    // Zone centers: the radius-q grid's cells, scaled.
    HexGrid centers(q);
    std::set<VertexId> r_vertex_set;
    std::set<Edge> r_edge_set;

    for (const auto& center_cell : centers.cells()) {
        Zone zone;
        zone.id = static_cast<int>(layout.zones.size());
        zone.center = {center_cell.axial.a * stride, center_cell.axial.b * stride};
        zone.ring_vertices.resize(static_cast<std::size_t>(m));

        // Vertex -> smallest cell ring inside this zone, for circle indices.
        std::map<int, int> min_ring; // grid vertex -> ring

        for (std::size_t ci = 0; ci < grid.cells().size(); ++ci) {
            const auto& cell = grid.cells()[ci];
            int ring = hex_cell_distance(cell.axial, zone.center);
            if (ring > m - 1) continue;
            zone.cells.push_back(static_cast<int>(ci));
            zone.cell_ring.push_back(ring);
            for (int corner : cell.corners) {
                auto [it, fresh] = min_ring.try_emplace(corner, ring);
                if (!fresh) it->second = std::min(it->second, ring);
            }
            for (int e : grid.cell_edges(ci)) {
                const auto& path = host.edge_paths[static_cast<std::size_t>(e)];
                auto [gu, gv] = grid.edges()[static_cast<std::size_t>(e)];
                (void)gu;
                (void)gv;
                for (std::size_t i = 0; i < path.size(); ++i) {
                    zone.vertices.push_back(path[i]);
                    zone.ring_vertices[static_cast<std::size_t>(ring)].push_back(path[i]);
                    if (ring <= 2 * k + 2) zone.core_vertices.push_back(path[i]);
                    if (i + 1 < path.size())
                        r_edge_set.insert({std::min(path[i], path[i + 1]),
                                           std::max(path[i], path[i + 1])});
                }
            }
        }
        if (zone.cells.size() != static_cast<std::size_t>(3 * m * (m - 1) + 1))
            throw DomainError("layout_zones: zone does not fit inside the host grid");

        sort_unique(zone.vertices);
        sort_unique(zone.core_vertices);
        for (auto& ring : zone.ring_vertices) sort_unique(ring);

        // Outer circle: vertices seen only by outermost-ring cells, plus the
        // interiors of their outward-facing edge paths.
        for (const auto& [gv, ring] : min_ring)
            if (ring == m - 1) {
                // grid vertex on the zone boundary; its circle is m.
                VertexId hv = host.branch_image[static_cast<std::size_t>(gv)];
                zone.outer_circle.push_back(hv);
            }
        // Edge-path interiors on the boundary: paths of edges whose both
        // endpoints sit on the outer circle and which belong to an
        // outermost-ring cell only once in this zone.
        for (std::size_t zc = 0; zc < zone.cells.size(); ++zc) {
            if (zone.cell_ring[zc] != m - 1) continue;
            int ci = zone.cells[zc];
            for (int e : grid.cell_edges(static_cast<std::size_t>(ci))) {
                auto [gu, gv] = grid.edges()[static_cast<std::size_t>(e)];
                auto u_it = min_ring.find(gu);
                auto v_it = min_ring.find(gv);
                if (u_it->second != m - 1 || v_it->second != m - 1) continue;
                const auto& path = host.edge_paths[static_cast<std::size_t>(e)];
                for (std::size_t i = 1; i + 1 < path.size(); ++i)
                    zone.outer_circle.push_back(path[i]);
            }
        }
        sort_unique(zone.outer_circle);

        for (VertexId v : zone.vertices) r_vertex_set.insert(v);
        layout.zones.push_back(std::move(zone));
    }

    layout.r_vertices.assign(r_vertex_set.begin(), r_vertex_set.end());
    layout.r_edges.assign(r_edge_set.begin(), r_edge_set.end());
    return layout;
}

std::vector<GridComponent> grid_components(const Graph& g, const ZoneLayout& layout) {
    for (VertexId v : layout.r_vertices)
        if (!g.has_vertex(v))
            throw DomainError("grid_components: layout vertex absent from graph");

    std::vector<GridComponent> out;
    std::vector<bool> in_r(g.universe(), false);
    for (VertexId v : layout.r_vertices) in_r[v] = true;

    std::vector<bool> seen(g.universe(), false);
    for (VertexId s : g.vertices()) {
        if (in_r[s] || seen[s]) continue;
        GridComponent comp;
        comp.kind = ComponentKind::Component;
        std::vector<VertexId> stack{s};
        seen[s] = true;
        std::set<VertexId> attach;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            comp.vertices.push_back(v);
            for (VertexId w : g.neighbors(v)) {
                if (in_r[w]) {
                    attach.insert(w);
                } else if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.vertices.begin(), comp.vertices.end());
        comp.attachments.assign(attach.begin(), attach.end());
        out.push_back(std::move(comp));
    }

    for (const auto& [u, v] : g.edges()) {
        if (!in_r[u] || !in_r[v]) continue;
        if (layout.r_has_edge(u, v)) continue;
        GridComponent chord;
        chord.kind = ComponentKind::SingleEdge;
        chord.chord = {u, v};
        chord.attachments = {u, v};
        out.push_back(std::move(chord));
    }
    return out;
}

namespace {

ZoneState classify_with(const std::vector<GridComponent>& comps, const Zone& zone) {
    for (const auto& comp : comps) {
        bool touches_core = false;
        bool escapes = false;
        for (VertexId a : comp.attachments) {
            if (std::binary_search(zone.core_vertices.begin(), zone.core_vertices.end(), a))
                touches_core = true;
            if (!std::binary_search(zone.vertices.begin(), zone.vertices.end(), a)) escapes = true;
            if (touches_core && escapes) return ZoneState::Open;
        }
    }
    return ZoneState::Closed;
}

Graph t_of(const Graph& g, const std::vector<GridComponent>& comps,
           std::span<const VertexId> h_vertices) {
    std::vector<VertexId> h_sorted(h_vertices.begin(), h_vertices.end());
    std::sort(h_sorted.begin(), h_sorted.end());
    std::vector<VertexId> keep = h_sorted;
    for (const auto& comp : comps) {
        if (comp.kind != ComponentKind::Component) continue;
        if (comp.attachments.empty()) continue; // floating parts stay out
        if (subset_of(comp.attachments, h_sorted))
            keep.insert(keep.end(), comp.vertices.begin(), comp.vertices.end());
    }
    sort_unique(keep);
    return g.induced(keep);
}

bool flat_with(const Graph& g, const std::vector<GridComponent>& comps, const Zone& zone) {
    if (classify_with(comps, zone) != ZoneState::Closed) return false;
    return is_planar(t_of(g, comps, zone.vertices));
}

} // namespace

ZoneState classify_zone(const Graph& g, const ZoneLayout& layout, const Zone& zone) {
    return classify_with(grid_components(g, layout), zone);
}

Graph induced_with_components(const Graph& g, const ZoneLayout& layout,
                              std::span<const VertexId> h_vertices) {
    return t_of(g, grid_components(g, layout), h_vertices);
}

bool is_flat(const Graph& g, const ZoneLayout& layout, const Zone& zone) {
    return flat_with(g, grid_components(g, layout), zone);
}

Graph reduction_a(const Graph& g, const ZoneLayout& layout, const Zone& flat_zone) {
    auto comps = grid_components(g, layout);
    if (!flat_with(g, comps, flat_zone))
        throw DomainError("reduction_a: zone is not flat");
    Graph t0 = t_of(g, comps, flat_zone.ring_vertices[0]);
    return g.delete_vertices(t0.vertices());
}

ZoneAnalysis analyze_zones(const Graph& g, const ZoneLayout& layout, int threads) {
    ZoneAnalysis res;
    res.components = grid_components(g, layout);
    res.state.resize(layout.zones.size());
    res.flat.assign(layout.zones.size(), false);

    auto work = [&](std::size_t zi) {
        const Zone& zone = layout.zones[zi];
        res.state[zi] = classify_with(res.components, zone);
        res.flat[zi] = res.state[zi] == ZoneState::Closed &&
                       is_planar(t_of(g, res.components, zone.vertices));
    };

    if (threads <= 1 || layout.zones.size() < 2) {
        for (std::size_t zi = 0; zi < layout.zones.size(); ++zi) work(zi);
        return res;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    int n_workers = std::min<int>(threads, static_cast<int>(layout.zones.size()));
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t zi = next.fetch_add(1); zi < layout.zones.size();
                 zi = next.fetch_add(1))
                work(zi);
        });
    for (auto& th : pool) th.join();
    return res;
}

AttachmentKind attachment_kind(const ZoneLayout& layout, const Zone& zone,
                               std::span<const VertexId> attachments) {
    if (attachments.empty()) return AttachmentKind::Other;
    if (attachments.size() == 1) return AttachmentKind::EdgeComponent;

    const HexGrid& grid = *layout.host.grid;
    // Attached to a single edge-path of the zone?
    for (int ci : zone.cells) {
        for (int e : grid.cell_edges(static_cast<std::size_t>(ci))) {
            const auto& path = layout.host.edge_paths[static_cast<std::size_t>(e)];
            std::vector<VertexId> pv(path.begin(), path.end());
            std::sort(pv.begin(), pv.end());
            if (subset_of(attachments, pv)) return AttachmentKind::EdgeComponent;
        }
    }
    // Attached within one cell's boundary?
    for (int ci : zone.cells) {
        std::vector<VertexId> cell_verts;
        for (int e : grid.cell_edges(static_cast<std::size_t>(ci))) {
            const auto& path = layout.host.edge_paths[static_cast<std::size_t>(e)];
            cell_verts.insert(cell_verts.end(), path.begin(), path.end());
        }
        sort_unique(cell_verts);
        if (subset_of(attachments, cell_verts)) return AttachmentKind::CellComponent;
    }
    return AttachmentKind::Other;
}

std::string zone_diagnostics_json(const Graph& g, const ZoneLayout& layout) {
    ZoneAnalysis analysis = analyze_zones(g, layout);
    nlohmann::json zones = nlohmann::json::array();
    for (std::size_t zi = 0; zi < layout.zones.size(); ++zi) {
        const Zone& zone = layout.zones[zi];
        std::size_t attached = 0, edge_like = 0, cell_like = 0, chords = 0;
        for (const auto& comp : analysis.components) {
            bool touches = false;
            for (VertexId a : comp.attachments)
                if (std::binary_search(zone.vertices.begin(), zone.vertices.end(), a)) {
                    touches = true;
                    break;
                }
            if (!touches) continue;
            ++attached;
            if (comp.kind == ComponentKind::SingleEdge) ++chords;
            switch (attachment_kind(layout, zone, comp.attachments)) {
            case AttachmentKind::EdgeComponent: ++edge_like; break;
            case AttachmentKind::CellComponent: ++cell_like; break;
            case AttachmentKind::Other: break;
            }
        }
        zones.push_back({{"id", zone.id},
                         {"open", analysis.state[zi] == ZoneState::Open},
                         {"flat", static_cast<bool>(analysis.flat[zi])},
                         {"components_attached", attached},
                         {"chords", chords},
                         {"edge_components", edge_like},
                         {"cell_components", cell_like}});
    }
    nlohmann::json out{{"zones", zones},
                       {"zone_count", layout.zones.size()},
                       {"k", layout.k},
                       {"q", layout.q}};
    return out.dump(2);
}

} // namespace apex
