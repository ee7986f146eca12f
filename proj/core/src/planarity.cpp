#include "apex/planarity.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace apex {

namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

struct Mapped {
    BoostGraph bg;
    std::vector<VertexId> to_host; // boost index -> host id
};

Mapped to_boost(const Graph& g) {
    Mapped m;
    m.to_host = g.vertices();
    std::vector<std::uint32_t> to_local(g.universe(), 0);
    for (std::size_t i = 0; i < m.to_host.size(); ++i) to_local[m.to_host[i]] = static_cast<std::uint32_t>(i);

    m.bg = BoostGraph(m.to_host.size());
    for (const auto& [u, v] : g.edges())
        boost::add_edge(to_local[u], to_local[v], m.bg);

    auto e_index = boost::get(boost::edge_index, m.bg);
    int ec = 0;
    for (auto [ei, ee] = boost::edges(m.bg); ei != ee; ++ei)
        boost::put(e_index, *ei, ec++);
    return m;
}

bool boost_is_planar(const Graph& g) {
    if (g.edge_count() < 9 || g.vertex_count() < 5) return true;
    Mapped m = to_boost(g);
    return boost::boyer_myrvold_planarity_test(m.bg);
}

// Host-id edges of some Kuratowski subgraph of g; empty iff planar.
std::vector<Edge> boost_kuratowski_edges(const Graph& g) {
    if (g.edge_count() < 9 || g.vertex_count() < 5) return {};
    Mapped m = to_boost(g);
    std::vector<BoostEdge> kur;
    bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = m.bg,
        boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kur));
    if (planar) return {};
    std::vector<Edge> out;
    out.reserve(kur.size());
    for (BoostEdge e : kur) {
        VertexId u = m.to_host[boost::source(e, m.bg)];
        VertexId v = m.to_host[boost::target(e, m.bg)];
        out.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Strips every edge whose removal keeps the subgraph nonplanar, then strips
// isolated vertices. By Kuratowski's theorem the survivor is exactly a
// subdivision of K5 or K3,3.
Graph minimize_nonplanar(std::vector<Edge> edges) {
    auto make = [](const std::vector<Edge>& es) { return Graph::from_edges(es); };
    for (std::size_t i = 0; i < edges.size();) {
        std::vector<Edge> trial = edges;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (!boost_is_planar(make(trial))) {
            edges = std::move(trial);
        } else {
            ++i;
        }
    }
    Graph g = make(edges);
    std::vector<VertexId> isolated;
    for (VertexId v : g.vertices())
        if (g.degree(v) == 0) isolated.push_back(v);
    return isolated.empty() ? g : g.delete_vertices(isolated);
}

// Walks from branch vertex `from` along `first` through degree-2 vertices
// until the next vertex of degree != 2.
PathInGraph trace_path(const Graph& w, VertexId from, VertexId first) {
    PathInGraph p;
    p.vertices.push_back(from);
    VertexId prev = from;
    VertexId cur = first;
    while (w.degree(cur) == 2) {
        p.vertices.push_back(cur);
        auto nbrs = w.neighbors(cur);
        VertexId next = (nbrs[0] == prev) ? nbrs[1] : nbrs[0];
        prev = cur;
        cur = next;
    }
    p.vertices.push_back(cur);
    return p;
}

KuratowskiWitness parse_subdivision(const Graph& w) {
    std::vector<VertexId> branch;
    for (VertexId v : w.vertices()) {
        std::size_t d = w.degree(v);
        if (d != 2 && d != 3 && d != 4)
            throw std::logic_error("kuratowski parse: unexpected degree");
        if (d >= 3) branch.push_back(v);
    }

    // Contracted adjacency over branch vertices, path per pair.
    std::map<std::pair<VertexId, VertexId>, PathInGraph> paths;
    for (VertexId b : branch) {
        for (VertexId first : w.neighbors(b)) {
            PathInGraph p = trace_path(w, b, first);
            VertexId other = p.back();
            if (other == b) throw std::logic_error("kuratowski parse: cycle at branch vertex");
            std::pair<VertexId, VertexId> key{std::min(b, other), std::max(b, other)};
            if (!paths.count(key)) {
                if (p.front() > p.back()) std::reverse(p.vertices.begin(), p.vertices.end());
                paths.emplace(key, std::move(p));
            }
        }
    }

    KuratowskiWitness out;
    if (branch.size() == 5) {
        out.kind = KuratowskiKind::K5;
        out.branch_vertices = branch;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j) {
                auto it = paths.find({std::min(branch[i], branch[j]), std::max(branch[i], branch[j])});
                if (it == paths.end()) throw std::logic_error("kuratowski parse: missing K5 path");
                out.edge_paths.push_back(it->second);
            }
    } else if (branch.size() == 6) {
        out.kind = KuratowskiKind::K33;
        // Class of branch[0] = itself plus the two branch vertices it has no
        // path to; the rest form the other class.
        std::vector<VertexId> left{branch[0]}, right;
        for (std::size_t i = 1; i < 6; ++i) {
            auto key = std::pair<VertexId, VertexId>{std::min(branch[0], branch[i]),
                                                     std::max(branch[0], branch[i])};
            (paths.count(key) ? right : left).push_back(branch[i]);
        }
        if (left.size() != 3 || right.size() != 3)
            throw std::logic_error("kuratowski parse: not bipartite 3+3");
        out.branch_vertices = left;
        out.branch_vertices.insert(out.branch_vertices.end(), right.begin(), right.end());
        for (VertexId a : left)
            for (VertexId b : right) {
                auto it = paths.find({std::min(a, b), std::max(a, b)});
                if (it == paths.end()) throw std::logic_error("kuratowski parse: missing K33 path");
                PathInGraph p = it->second;
                if (p.front() != a) std::reverse(p.vertices.begin(), p.vertices.end());
                out.edge_paths.push_back(std::move(p));
            }
    } else {
        throw std::logic_error("kuratowski parse: bad branch count");
    }
    return out;
}

// Reroutes each edge-path through the shortest route inside the subgraph of g
// induced by the path's own vertices, exploiting chords to drop interiors.
void shortcut_paths(const Graph& g, KuratowskiWitness& w) {
    for (PathInGraph& p : w.edge_paths) {
        if (p.length() < 2) continue;
        const auto& verts = p.vertices;
        std::map<VertexId, std::size_t> pos;
        for (std::size_t i = 0; i < verts.size(); ++i) pos.emplace(verts[i], i);

        // BFS over the induced subgraph, smallest position first.
        std::vector<std::ptrdiff_t> parent(verts.size(), -1);
        std::vector<bool> seen(verts.size(), false);
        std::queue<std::size_t> q;
        q.push(0);
        seen[0] = true;
        while (!q.empty()) {
            std::size_t i = q.front();
            q.pop();
            for (VertexId nb : g.neighbors(verts[i])) {
                auto it = pos.find(nb);
                if (it == pos.end() || seen[it->second]) continue;
                seen[it->second] = true;
                parent[it->second] = static_cast<std::ptrdiff_t>(i);
                q.push(it->second);
            }
        }
        std::size_t goal = verts.size() - 1;
        std::vector<VertexId> route;
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(goal); i != -1; i = parent[i])
            route.push_back(verts[static_cast<std::size_t>(i)]);
        std::reverse(route.begin(), route.end());
        if (route.size() < verts.size()) p.vertices = std::move(route);
    }
}

} // namespace

std::vector<VertexId> KuratowskiWitness::all_vertices() const {
    std::vector<VertexId> out = branch_vertices;
    for (const auto& p : edge_paths)
        out.insert(out.end(), p.vertices.begin(), p.vertices.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Graph KuratowskiWitness::subgraph() const {
    std::vector<Edge> edges;
    for (const auto& p : edge_paths)
        for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
            edges.emplace_back(std::min(p.vertices[i], p.vertices[i + 1]),
                               std::max(p.vertices[i], p.vertices[i + 1]));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph::from_edges(edges);
}

WitnessCheck validate_witness(const Graph& host, const KuratowskiWitness& w) {
    auto fail = [](std::string why) { return WitnessCheck{false, std::move(why)}; };

    const bool k5 = w.kind == KuratowskiKind::K5;
    if (w.branch_vertices.size() != (k5 ? 5u : 6u)) return fail("branch count");
    if (w.edge_paths.size() != (k5 ? 10u : 9u)) return fail("path count");

    std::set<VertexId> branch_set(w.branch_vertices.begin(), w.branch_vertices.end());
    if (branch_set.size() != w.branch_vertices.size()) return fail("branch vertices not distinct");
    for (VertexId b : w.branch_vertices)
        if (!host.has_vertex(b)) return fail("branch vertex absent from host");

    // Expected endpoints per canonical index.
    std::vector<std::pair<VertexId, VertexId>> want;
    if (k5) {
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j)
                want.emplace_back(w.branch_vertices[i], w.branch_vertices[j]);
    } else {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 3; j < 6; ++j)
                want.emplace_back(w.branch_vertices[i], w.branch_vertices[j]);
    }

    std::set<VertexId> used_interior;
    for (std::size_t i = 0; i < w.edge_paths.size(); ++i) {
        const PathInGraph& p = w.edge_paths[i];
        if (!p.valid_in(host)) return fail("path " + std::to_string(i) + " invalid in host");
        auto [a, b] = want[i];
        bool forward = p.front() == a && p.back() == b;
        bool backward = p.front() == b && p.back() == a;
        if (!forward && !backward) return fail("path " + std::to_string(i) + " endpoint mismatch");
        for (VertexId v : p.interior()) {
            if (branch_set.count(v)) return fail("path interior touches a branch vertex");
            if (!used_interior.insert(v).second) return fail("paths share an interior vertex");
        }
    }
    return {};
}

bool is_planar(const Graph& g) { return boost_is_planar(g); }

std::optional<KuratowskiWitness> find_kuratowski(const Graph& g) {
    for (const auto& comp : g.connected_components()) {
        if (comp.size() < 5) continue;
        Graph sub = g.induced(comp);
        std::vector<Edge> kur = boost_kuratowski_edges(sub);
        if (kur.empty()) continue;
        Graph minimal = minimize_nonplanar(std::move(kur));
        KuratowskiWitness w = parse_subdivision(minimal);
        shortcut_paths(g, w);
        return w;
    }
    return std::nullopt;
}

std::optional<RotationSystem> planar_embedding(const Graph& g) {
    Mapped m = to_boost(g);
    std::vector<std::vector<BoostEdge>> embedding(boost::num_vertices(m.bg));
    bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = m.bg,
        boost::boyer_myrvold_params::embedding = embedding.data());
    if (!planar) return std::nullopt;

    RotationSystem rs;
    rs.order.resize(g.universe());
    for (std::size_t i = 0; i < m.to_host.size(); ++i) {
        VertexId host = m.to_host[i];
        for (BoostEdge e : embedding[i]) {
            auto s = boost::source(e, m.bg);
            auto t = boost::target(e, m.bg);
            rs.order[host].push_back(m.to_host[s == i ? t : s]);
        }
    }
    return rs;
}

std::size_t count_faces(const Graph& g, const RotationSystem& rs) {
    // Directed-edge orbit count under (u,v) -> (v, successor of u around v).
    std::map<std::pair<VertexId, VertexId>, bool> visited;
    std::vector<std::map<VertexId, std::size_t>> pos(g.universe());
    for (VertexId v : g.vertices())
        for (std::size_t i = 0; i < rs.order[v].size(); ++i) pos[v].emplace(rs.order[v][i], i);

    std::size_t faces = 0;
    for (VertexId u : g.vertices()) {
        for (VertexId v : rs.order[u]) {
            if (visited[{u, v}]) continue;
            ++faces;
            VertexId cu = u, cv = v;
            while (!visited[{cu, cv}]) {
                visited[{cu, cv}] = true;
                std::size_t i = pos[cv].at(cu);
                const auto& around = rs.order[cv];
                VertexId next = around[(i + 1) % around.size()];
                cu = cv;
                cv = next;
            }
        }
    }
    // Edgeless components are a single face each.
    for (VertexId v : g.vertices())
        if (g.degree(v) == 0) ++faces;
    return faces;
}

bool embedding_satisfies_euler(const Graph& g, const RotationSystem& rs) {
    for (const auto& comp : g.connected_components()) {
        Graph sub = g.induced(comp);
        RotationSystem local;
        local.order.resize(sub.universe());
        for (VertexId v : comp) local.order[v] = rs.order[v];
        std::size_t f = count_faces(sub, local);
        std::size_t v = sub.vertex_count();
        std::size_t e = sub.edge_count();
        if (v + f != e + 2) return false;
    }
    return true;
}

} // namespace apex
