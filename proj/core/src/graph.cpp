#include "apex/graph.hpp"

#include <algorithm>
#include <numeric>

namespace apex {

GraphBuildReport Graph::build(std::span<const Edge> edges,
                                std::span<const VertexId> extra_vertices) {
    GraphBuildReport report;

    VertexId max_id = 0;
    bool any = false;
    for (const auto& [u, v] : edges) {
        max_id = std::max({max_id, u, v});
        any = true;
    }
    for (VertexId v : extra_vertices) {
        max_id = std::max(max_id, v);
        any = true;
    }
    if (any && max_id > kMaxVertexId)
        throw CapacityError("vertex id " + std::to_string(max_id) + " exceeds capacity");

    std::vector<Edge> norm;
    std::vector<VertexId> loop_endpoints;
    norm.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        if (u == v) {
            ++report.dropped_loops;
            loop_endpoints.push_back(u); // a mentioned vertex stays present
            continue;
        }
        norm.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(norm.begin(), norm.end());
    auto last = std::unique(norm.begin(), norm.end());
    report.dropped_duplicates = static_cast<std::size_t>(norm.end() - last);
    norm.erase(last, norm.end());

    Graph& g = report.graph;
    if (any) {
        g.adj_.resize(static_cast<std::size_t>(max_id) + 1);
        g.present_.resize(static_cast<std::size_t>(max_id) + 1, false);
    }
    for (const auto& [u, v] : norm) {
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
        g.present_[u] = g.present_[v] = true;
    }
    for (VertexId v : extra_vertices) g.present_[v] = true;
    for (VertexId v : loop_endpoints) g.present_[v] = true;
    for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());

    g.m_ = norm.size();
    g.n_present_ = static_cast<std::size_t>(
        std::count(g.present_.begin(), g.present_.end(), true));
    return report;
}

Graph Graph::from_edges(std::span<const Edge> edges,
                        std::span<const VertexId> extra_vertices) {
    GraphBuildReport report = build(edges, extra_vertices);
    if (report.dropped_loops != 0)
        throw DomainError("from_edges: input contains a self-loop");
    if (report.dropped_duplicates != 0)
        throw DomainError("from_edges: input contains a duplicate edge");
    return std::move(report.graph);
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    if (!has_vertex(u) || !has_vertex(v)) return false;
    const auto& nbrs = adj_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
    if (!has_vertex(v)) throw DomainError("neighbors: vertex " + std::to_string(v) + " absent");
    return adj_[v];
}

std::vector<VertexId> Graph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(n_present_);
    for (VertexId v = 0; v < present_.size(); ++v)
        if (present_[v]) out.push_back(v);
    return out;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (VertexId u = 0; u < adj_.size(); ++u)
        for (VertexId v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::delete_vertices(std::span<const VertexId> s) const {
    std::vector<bool> drop(present_.size(), false);
    for (VertexId v : s) {
        if (!has_vertex(v))
            throw DomainError("delete_vertices: vertex " + std::to_string(v) + " absent");
        drop[v] = true;
    }

    Graph out;
    out.adj_.resize(adj_.size());
    out.present_ = present_;
    out.n_present_ = n_present_;
    for (VertexId v = 0; v < present_.size(); ++v) {
        if (!present_[v]) continue;
        if (drop[v]) {
            out.present_[v] = false;
            --out.n_present_;
            continue;
        }
        auto& nbrs = out.adj_[v];
        nbrs.reserve(adj_[v].size());
        for (VertexId w : adj_[v])
            if (!drop[w]) nbrs.push_back(w);
        out.m_ += nbrs.size();
    }
    out.m_ /= 2;
    return out;
}

Graph Graph::delete_vertex(VertexId v) const {
    const VertexId one[1] = {v};
    return delete_vertices(one);
}

Graph Graph::induced(std::span<const VertexId> keep) const {
    std::vector<bool> in(present_.size(), false);
    for (VertexId v : keep) {
        if (!has_vertex(v))
            throw DomainError("induced: vertex " + std::to_string(v) + " absent");
        in[v] = true;
    }
    std::vector<VertexId> drop;
    drop.reserve(n_present_);
    for (VertexId v = 0; v < present_.size(); ++v)
        if (present_[v] && !in[v]) drop.push_back(v);
    return delete_vertices(drop);
}

std::vector<std::vector<VertexId>> Graph::connected_components() const {
    std::vector<std::vector<VertexId>> comps;
    std::vector<bool> seen(present_.size(), false);
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < present_.size(); ++s) {
        if (!present_[s] || seen[s]) continue;
        std::vector<VertexId> comp;
        seen[s] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (VertexId w : adj_[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    // Scanning from ascending seeds already yields min-id order.
    return comps;
}

std::span<const VertexId> PathInGraph::interior() const {
    if (vertices.size() <= 2) return {};
    return {vertices.data() + 1, vertices.size() - 2};
}

bool PathInGraph::valid_in(const Graph& g) const {
    if (vertices.empty()) return false;
    std::vector<VertexId> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (VertexId v : vertices)
        if (!g.has_vertex(v)) return false;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        if (!g.has_edge(vertices[i], vertices[i + 1])) return false;
    return true;
}

bool edge_count_prefilter(const Graph& g, int k) {
    if (k < 0) throw DomainError("edge_count_prefilter: negative budget");
    const auto n = static_cast<std::uint64_t>(g.vertex_count());
    const auto m = static_cast<std::uint64_t>(g.edge_count());
    return m <= (static_cast<std::uint64_t>(k) + 3) * n;
}

} // namespace apex
