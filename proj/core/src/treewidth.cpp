#include "apex/treewidth.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace apex {

namespace {

// Dynamic adjacency used while simulating eliminations.
struct EliminationSim {
    std::vector<std::set<VertexId>> adj;
    std::vector<VertexId> verts;

    explicit EliminationSim(const Graph& g) {
        adj.resize(g.universe());
        verts = g.vertices();
        for (const auto& [u, v] : g.edges()) {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }

    // Removes v, cliquifying its neighborhood. Returns the bag size |N(v)|+1.
    std::size_t eliminate(VertexId v) {
        std::vector<VertexId> nbrs(adj[v].begin(), adj[v].end());
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                adj[nbrs[i]].insert(nbrs[j]);
                adj[nbrs[j]].insert(nbrs[i]);
            }
        for (VertexId u : nbrs) adj[u].erase(v);
        std::size_t bag = nbrs.size() + 1;
        adj[v].clear();
        return bag;
    }

    std::size_t fill_cost(VertexId v) const {
        std::vector<VertexId> nbrs(adj[v].begin(), adj[v].end());
        std::size_t missing = 0;
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                if (!adj[nbrs[i]].count(nbrs[j])) ++missing;
        return missing;
    }
};

std::vector<VertexId> min_degree_order(const Graph& g) {
    EliminationSim sim(g);
    std::vector<VertexId> order;
    std::vector<VertexId> remaining = sim.verts;
    order.reserve(remaining.size());
    std::vector<bool> done(g.universe(), false);
    for (std::size_t step = 0; step < sim.verts.size(); ++step) {
        VertexId best = 0;
        std::size_t best_deg = std::numeric_limits<std::size_t>::max();
        for (VertexId v : remaining) {
            if (done[v]) continue;
            std::size_t d = sim.adj[v].size();
            if (d < best_deg) { // ties fall to the smallest id by scan order
                best_deg = d;
                best = v;
            }
        }
        sim.eliminate(best);
        done[best] = true;
        order.push_back(best);
    }
    return order;
}

std::vector<VertexId> min_fill_order(const Graph& g) {
    EliminationSim sim(g);
    std::vector<VertexId> order;
    std::vector<bool> done(g.universe(), false);
    for (std::size_t step = 0; step < sim.verts.size(); ++step) {
        VertexId best = 0;
        std::size_t best_fill = std::numeric_limits<std::size_t>::max();
        for (VertexId v : sim.verts) {
            if (done[v]) continue;
            std::size_t f = sim.fill_cost(v);
            if (f < best_fill) {
                best_fill = f;
                best = v;
            }
        }
        sim.eliminate(best);
        done[best] = true;
        order.push_back(best);
    }
    return order;
}

int order_width(const Graph& g, std::span<const VertexId> order) {
    EliminationSim sim(g);
    std::size_t width_plus_1 = 1;
    for (VertexId v : order) width_plus_1 = std::max(width_plus_1, sim.eliminate(v));
    return static_cast<int>(width_plus_1) - 1;
}

constexpr std::size_t kExactLimit = 14;

// Neighbors of v outside done-set T, counting vertices reachable through T.
std::size_t eliminated_degree(const std::vector<std::vector<int>>& adj, int n, int v,
                              std::uint32_t t_mask) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{v};
    seen[v] = true;
    std::size_t deg = 0;
    std::vector<bool> counted(n, false);
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[u]) {
            if (t_mask >> w & 1) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            } else if (w != v && !counted[w]) {
                counted[w] = true;
                ++deg;
            }
        }
    }
    return deg;
}

struct ExactResult {
    int width;
    std::vector<int> order; // local indices
};

ExactResult exact_treewidth_local(const std::vector<std::vector<int>>& adj, int n) {
    if (n == 0) return {-1, {}};
    const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
    std::vector<std::uint8_t> f(full + 1, 0xff); // width+1 capped at 254
    std::vector<std::int8_t> pick(full + 1, -1);
    f[0] = 0;
    for (std::uint32_t s = 1; s <= full; ++s) {
        std::uint8_t best = 0xff;
        std::int8_t best_v = -1;
        for (int v = 0; v < n; ++v) {
            if (!(s >> v & 1)) continue;
            std::uint32_t rest = s & ~(1u << v);
            if (f[rest] == 0xff) continue;
            std::size_t d = eliminated_degree(adj, n, v, rest);
            std::uint8_t cand = std::max<std::uint8_t>(f[rest], static_cast<std::uint8_t>(
                                                                     std::min<std::size_t>(d, 253)));
            if (cand < best) {
                best = cand;
                best_v = static_cast<std::int8_t>(v);
            }
        }
        f[s] = best;
        pick[s] = best_v;
    }
    ExactResult res;
    res.width = static_cast<int>(f[full]);
    std::uint32_t s = full;
    while (s) {
        int v = pick[s];
        res.order.push_back(v);
        s &= ~(1u << v);
    }
    std::reverse(res.order.begin(), res.order.end());
    return res;
}

ExactResult exact_on(const Graph& g) {
    std::vector<VertexId> verts = g.vertices();
    int n = static_cast<int>(verts.size());
    std::vector<int> local(g.universe(), -1);
    for (int i = 0; i < n; ++i) local[verts[i]] = i;
    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, v] : g.edges()) {
        adj[local[u]].push_back(local[v]);
        adj[local[v]].push_back(local[u]);
    }
    return exact_treewidth_local(adj, n);
}

} // namespace

int TreeDecomposition::width() const {
    std::size_t largest = 0;
    for (const auto& bag : bags) largest = std::max(largest, bag.size());
    return static_cast<int>(largest) - 1;
}

DecompositionCheck validate_decomposition(const Graph& g, const TreeDecomposition& td) {
    auto fail = [](std::string why) { return DecompositionCheck{false, std::move(why)}; };
    const int b = static_cast<int>(td.bags.size());

    // tree_edges must form a tree over bag ids.
    if (b > 0) {
        std::vector<std::vector<int>> t(b);
        for (auto [x, y] : td.tree_edges) {
            if (x < 0 || x >= b || y < 0 || y >= b) return fail("tree edge out of range");
            t[x].push_back(y);
            t[y].push_back(x);
        }
        if (td.tree_edges.size() + 1 != static_cast<std::size_t>(b))
            return fail("tree has wrong edge count");
        std::vector<bool> seen(b, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int reached = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : t[x])
                if (!seen[y]) {
                    seen[y] = true;
                    ++reached;
                    stack.push_back(y);
                }
        }
        if (reached != b) return fail("tree disconnected");
    }

    std::vector<std::vector<int>> containing(g.universe());
    for (int i = 0; i < b; ++i)
        for (VertexId v : td.bags[i]) {
            if (!g.has_vertex(v)) return fail("bag holds absent vertex " + std::to_string(v));
            containing[v].push_back(i);
        }

    for (VertexId v : g.vertices())
        if (containing[v].empty())
            return fail("vertex " + std::to_string(v) + " in no bag");

    for (const auto& [u, v] : g.edges()) {
        bool covered = false;
        for (int i : containing[u]) {
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) {
                covered = true;
                break;
            }
        }
        if (!covered)
            return fail("edge {" + std::to_string(u) + "," + std::to_string(v) + "} in no bag");
    }

    // Coherence: bags containing v induce a connected subtree.
    std::vector<std::vector<int>> t(b);
    for (auto [x, y] : td.tree_edges) {
        t[x].push_back(y);
        t[y].push_back(x);
    }
    for (VertexId v : g.vertices()) {
        const auto& occ = containing[v];
        std::vector<bool> in_occ(b, false);
        for (int i : occ) in_occ[i] = true;
        std::vector<bool> seen(b, false);
        std::vector<int> stack{occ[0]};
        seen[occ[0]] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : t[x])
                if (in_occ[y] && !seen[y]) {
                    seen[y] = true;
                    ++reached;
                    stack.push_back(y);
                }
        }
        if (reached != occ.size())
            return fail("occurrence subtree of vertex " + std::to_string(v) + " disconnected");
    }
    return {};
}

TreeDecomposition decomposition_from_order(const Graph& g, std::span<const VertexId> order) {
    TreeDecomposition td;
    const std::size_t n = order.size();
    if (n == 0) return td;

    EliminationSim sim(g);
    std::vector<int> bag_of(g.universe(), -1);
    std::vector<int> elim_pos(g.universe(), -1);
    td.bags.resize(n);
    std::vector<std::vector<VertexId>> bag_rest(n);
    for (std::size_t i = 0; i < n; ++i) {
        VertexId v = order[i];
        elim_pos[v] = static_cast<int>(i);
        bag_of[v] = static_cast<int>(i);
        std::vector<VertexId> nbrs(sim.adj[v].begin(), sim.adj[v].end());
        sim.eliminate(v);
        td.bags[i] = nbrs;
        td.bags[i].push_back(v);
        std::sort(td.bags[i].begin(), td.bags[i].end());
        bag_rest[i] = std::move(nbrs);
    }
    // Parent of bag i: bag of the earliest-eliminated vertex among the rest.
    std::vector<int> roots;
    for (std::size_t i = 0; i < n; ++i) {
        int parent = -1;
        int best_pos = std::numeric_limits<int>::max();
        for (VertexId u : bag_rest[i])
            if (elim_pos[u] < best_pos) {
                best_pos = elim_pos[u];
                parent = bag_of[u];
            }
        if (parent >= 0)
            td.tree_edges.emplace_back(static_cast<int>(i), parent);
        else
            roots.push_back(static_cast<int>(i));
    }
    // Chain component roots so the result is one tree.
    for (std::size_t i = 1; i < roots.size(); ++i)
        td.tree_edges.emplace_back(roots[i - 1], roots[i]);
    return td;
}

std::optional<TreeDecomposition> heuristic_decompose(const Graph& g, int target_width) {
    if (g.vertex_count() == 0) {
        if (target_width < -1) return std::nullopt;
        return TreeDecomposition{};
    }

    std::vector<VertexId> best_order = min_degree_order(g);
    int best = order_width(g, best_order);

    // Min-fill is quadratic-ish; skip it where min-degree already suffices on
    // large inputs.
    constexpr std::size_t kFillLimit = 2000;
    if (best > target_width || g.vertex_count() <= kFillLimit) {
        std::vector<VertexId> fill = min_fill_order(g);
        int w = order_width(g, fill);
        if (w < best) {
            best = w;
            best_order = std::move(fill);
        }
    }

    if (best > target_width && g.vertex_count() <= kExactLimit) {
        ExactResult exact = exact_on(g);
        if (exact.width < best) {
            std::vector<VertexId> verts = g.vertices();
            best_order.clear();
            for (int i : exact.order) best_order.push_back(verts[i]);
            best = exact.width;
        }
    }

    if (best > target_width) return std::nullopt;
    TreeDecomposition td = decomposition_from_order(g, best_order);
    return td;
}

int exact_treewidth(const Graph& g) {
    if (g.vertex_count() > kExactLimit)
        throw DomainError("exact_treewidth: graph too large");
    return exact_on(g).width;
}

int width_budget(int r, int k) {
    if (r < 1 || k < 0) throw DomainError("width_budget: need r >= 1, k >= 0");
    return 24 * r - 11 + k;
}

std::string to_td_format(const Graph& g, const TreeDecomposition& td) {
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << g.vertex_count() << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (VertexId v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [x, y] : td.tree_edges) out << x + 1 << ' ' << y + 1 << '\n';
    return out.str();
}

} // namespace apex
