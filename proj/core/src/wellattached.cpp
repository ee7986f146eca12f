#include "apex/wellattached.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <queue>
#include <set>
#include <thread>

#include <json.hpp>

namespace apex {

namespace {

bool contains(const std::vector<VertexId>& sorted, VertexId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

// Unit-capacity flow network with split vertices. Node layout:
//   0                 source (x, outgoing side)
//   1 + 2*i, 2 + 2*i  in/out pair for graph vertex i (usable intermediates)
//   base_g + j        collector per group j
//   last              sink
class PathNetwork {
public:
    PathNetwork(const Graph& g, VertexId x, std::span<const std::vector<VertexId>> groups,
                const std::vector<bool>& forbidden)
        : g_(g), x_(x) {
        group_of_.assign(g.universe(), -1);
        usable_.assign(g.universe(), false);
        for (std::size_t j = 0; j < groups.size(); ++j)
            for (VertexId t : groups[j]) group_of_[t] = static_cast<int>(j);
        for (VertexId v : g.vertices())
            usable_[v] = !forbidden[v] && group_of_[v] < 0 && v != x;

        base_groups_ = 1 + 2 * g.universe();
        node_count_ = base_groups_ + groups.size() + 1;
        head_.assign(node_count_, -1);

        // x -> neighbors
        for (VertexId w : g.neighbors(x)) add_from_source(w);
        // intermediate edges
        for (VertexId v : g.vertices()) {
            if (!usable_[v]) continue;
            add_arc(in_node(v), out_node(v), 1); // vertex capacity
            for (VertexId w : g.neighbors(v)) {
                if (w == x) continue;
                if (usable_[w]) add_arc(out_node(v), in_node(w), 1);
                else if (group_of_[w] >= 0) add_arc(out_node(v), in_node(w), 1);
            }
        }
        // terminals: in it goes, then straight to its group's collector
        for (std::size_t j = 0; j < groups.size(); ++j) {
            for (VertexId t : groups[j]) {
                add_arc(in_node(t), out_node(t), 1);
                add_arc(out_node(t), base_groups_ + static_cast<int>(j), 1);
            }
            add_arc(base_groups_ + static_cast<int>(j), sink(), 1); // one path per group
        }
    }

    int max_flow(std::size_t need) {
        int flow = 0;
        while (flow < static_cast<int>(need) && augment()) ++flow;
        return flow;
    }

    // Follows saturated arcs from the source; one path per unit of flow.
    std::vector<GroupPath> extract_paths() {
        std::vector<GroupPath> out;
        for (int e = head_[0]; e != -1; e = arcs_[static_cast<std::size_t>(e)].next) {
            const Arc& a = arcs_[static_cast<std::size_t>(e)];
            if (a.cap != 0) continue; // unsaturated
            GroupPath gp;
            gp.path.push_back(x_);
            int node = a.to;
            while (node < base_groups_) {
                VertexId v = vertex_of(node);
                if (gp.path.back() != v) gp.path.push_back(v);
                node = saturated_successor(node);
            }
            if (node == sink()) continue;
            gp.group = static_cast<std::size_t>(node - base_groups_);
            out.push_back(std::move(gp));
        }
        std::sort(out.begin(), out.end(),
                  [](const GroupPath& a, const GroupPath& b) { return a.group < b.group; });
        return out;
    }

private:
    struct Arc {
        int to;
        int cap;
        int next;
    };

    const Graph& g_;
    VertexId x_;
    std::vector<int> group_of_;
    std::vector<bool> usable_;
    std::vector<Arc> arcs_;
    std::vector<int> head_;
    int base_groups_ = 0;
    std::size_t node_count_ = 0;

    int in_node(VertexId v) const { return 1 + 2 * static_cast<int>(v); }
    int out_node(VertexId v) const { return 2 + 2 * static_cast<int>(v); }
    VertexId vertex_of(int node) const { return static_cast<VertexId>((node - 1) / 2); }
    int sink() const { return static_cast<int>(node_count_) - 1; }

    void add_arc(int from, int to, int cap) {
        arcs_.push_back({to, cap, head_[static_cast<std::size_t>(from)]});
        head_[static_cast<std::size_t>(from)] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({from, 0, head_[static_cast<std::size_t>(to)]});
        head_[static_cast<std::size_t>(to)] = static_cast<int>(arcs_.size()) - 1;
    }

    void add_from_source(VertexId w) {
        if (usable_[w] || group_of_[w] >= 0) add_arc(0, in_node(w), 1);
    }

    bool augment() {
        std::vector<int> pre(node_count_, -1); // arc index into each node
        std::queue<int> q;
        q.push(0);
        std::vector<bool> seen(node_count_, false);
        seen[0] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (v == sink()) break;
            for (int e = head_[static_cast<std::size_t>(v)]; e != -1;
                 e = arcs_[static_cast<std::size_t>(e)].next) {
                const Arc& a = arcs_[static_cast<std::size_t>(e)];
                if (a.cap <= 0 || seen[static_cast<std::size_t>(a.to)]) continue;
                seen[static_cast<std::size_t>(a.to)] = true;
                pre[static_cast<std::size_t>(a.to)] = e;
                q.push(a.to);
            }
        }
        if (!seen[static_cast<std::size_t>(sink())]) return false;
        for (int v = sink(); v != 0;) {
            int e = pre[static_cast<std::size_t>(v)];
            arcs_[static_cast<std::size_t>(e)].cap -= 1;
            arcs_[static_cast<std::size_t>(e ^ 1)].cap += 1;
            v = arcs_[static_cast<std::size_t>(e ^ 1)].to;
        }
        return true;
    }

    // Unique saturated outgoing arc from a unit-capacity node pair.
    int saturated_successor(int node) {
        // Step in-node -> out-node if present, then the saturated forward arc.
        for (int e = head_[static_cast<std::size_t>(node)]; e != -1;
             e = arcs_[static_cast<std::size_t>(e)].next) {
            const Arc& a = arcs_[static_cast<std::size_t>(e)];
            if ((e & 1) != 0) continue; // reverse arcs are odd
            if (a.cap != 0) continue;
            return a.to;
        }
        return sink();
    }
};

} // namespace

std::vector<Block> enumerate_disjoint_blocks(const ZoneLayout& layout) {
    std::vector<Block> blocks;
    const int block_cell_radius = layout.k + 2; // radius-(k+3) grid
    for (const Zone& zone : layout.zones) {
        GridBall ball = grid_ball(layout.host, zone.center, block_cell_radius);
        Block b;
        b.id = static_cast<int>(blocks.size());
        b.zone_id = zone.id;
        b.center = zone.center;
        b.vertices = std::move(ball.vertices);
        b.inner = std::move(ball.inner);
        b.outer_circle = std::move(ball.outer_circle);
        blocks.push_back(std::move(b));
    }
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
        std::vector<VertexId> shared;
        std::set_intersection(blocks[i].vertices.begin(), blocks[i].vertices.end(),
                              blocks[i + 1].vertices.begin(), blocks[i + 1].vertices.end(),
                              std::back_inserter(shared));
        if (!shared.empty())
            throw std::logic_error("enumerate_disjoint_blocks: zones produced overlapping blocks");
    }
    return blocks;
}

WellAttachedCheck validate_well_attached(const Graph& g, const ZoneLayout& layout,
                                         std::span<const Block> blocks,
                                         const WellAttachedWitness& w) {
    auto fail = [](std::string why) { return WellAttachedCheck{false, std::move(why)}; };
    const std::size_t need = static_cast<std::size_t>(layout.k) + 2;

    if (w.blocks.size() != need) return fail("block count");
    if (w.paths.size() != need) return fail("path count");
    std::set<int> distinct(w.blocks.begin(), w.blocks.end());
    if (distinct.size() != need) return fail("blocks not distinct");
    if (!g.has_vertex(w.vertex)) return fail("vertex absent");

    std::set<VertexId> seen_elsewhere;
    for (std::size_t i = 0; i < need; ++i) {
        int bi = w.blocks[i];
        if (bi < 0 || static_cast<std::size_t>(bi) >= blocks.size())
            return fail("block index out of range");
        const Block& block = blocks[static_cast<std::size_t>(bi)];
        const PathInGraph& p = w.paths[i];
        if (p.vertices.empty()) return fail("empty path");
        if (p.front() != w.vertex) return fail("path does not start at the vertex");
        if (!contains(block.inner, p.back())) return fail("path does not end at an inner vertex");
        if (p.vertices.size() == 1) {
            // zero-length: the vertex itself is inner to this block
            continue;
        }
        if (!p.valid_in(g)) return fail("path invalid in graph");
        for (std::size_t j = 1; j < p.vertices.size(); ++j) {
            VertexId v = p.vertices[j];
            if (j + 1 < p.vertices.size() && layout.in_r(v))
                return fail("path interior touches R");
            if (!seen_elsewhere.insert(v).second) return fail("paths share a non-root vertex");
        }
    }
    return {};
}

std::vector<GroupPath> disjoint_paths_to_groups(const Graph& g, VertexId x,
                                                std::span<const std::vector<VertexId>> groups,
                                                const std::vector<bool>& forbidden,
                                                std::size_t need) {
    PathNetwork net(g, x, groups, forbidden);
    std::size_t flow = static_cast<std::size_t>(net.max_flow(need));
    if (flow == 0) return {};
    return net.extract_paths();
}

std::optional<WellAttachedWitness> is_well_attached(const Graph& g, const ZoneLayout& layout,
                                                    std::span<const Block> blocks, VertexId x) {
    if (!g.has_vertex(x)) throw DomainError("is_well_attached: vertex absent");
    std::size_t need = static_cast<std::size_t>(layout.k) + 2;

    WellAttachedWitness w;
    w.vertex = x;

    // A block whose inner vertices include x contributes the trivial path.
    std::vector<std::vector<VertexId>> groups;
    std::vector<int> group_block;
    for (const Block& b : blocks) {
        if (contains(b.inner, x)) {
            w.blocks.push_back(b.id);
            w.paths.push_back(PathInGraph{{x}});
            continue;
        }
        groups.push_back(b.inner);
        group_block.push_back(b.id);
    }
    if (w.blocks.size() > 1) return std::nullopt; // blocks are disjoint; at most one holds x
    std::size_t still_needed = need - w.blocks.size();
    if (groups.size() < still_needed) return std::nullopt;

    std::vector<bool> forbidden(g.universe(), false);
    for (VertexId v : layout.r_vertices)
        if (g.has_vertex(v)) forbidden[v] = true;

    auto paths = disjoint_paths_to_groups(g, x, groups, forbidden, still_needed);
    if (paths.size() < still_needed) return std::nullopt;

    for (auto& gp : paths) {
        w.blocks.push_back(group_block[gp.group]);
        w.paths.push_back(PathInGraph{std::move(gp.path)});
    }
    auto check = validate_well_attached(g, layout, blocks, w);
    if (!check.ok)
        throw std::logic_error("is_well_attached: invalid witness: " + check.reason);
    return w;
}

std::vector<WellAttachedWitness> find_well_attached(const Graph& g, const ZoneLayout& layout,
                                                    std::span<const Block> blocks, int threads) {
    const std::size_t need = static_cast<std::size_t>(layout.k) + 2;

    // Reachability prefilter. Valid path interiors live inside a single
    // component of G - R, so the blocks a vertex can reach disjointly are
    // bounded by the blocks its components (or its own edges) touch.
    auto comps = grid_components(g, layout);
    std::vector<int> comp_of(g.universe(), -1);
    for (std::size_t ci = 0; ci < comps.size(); ++ci)
        if (comps[ci].kind == ComponentKind::Component)
            for (VertexId v : comps[ci].vertices) comp_of[v] = static_cast<int>(ci);

    std::vector<int> block_of_inner(g.universe(), -1);
    for (const Block& b : blocks)
        for (VertexId t : b.inner)
            if (t < g.universe()) block_of_inner[t] = b.id;

    // blocks adjacent to each component
    std::vector<std::set<int>> comp_blocks(comps.size());
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        if (comps[ci].kind != ComponentKind::Component) continue;
        for (VertexId a : comps[ci].attachments)
            if (block_of_inner[a] >= 0) comp_blocks[ci].insert(block_of_inner[a]);
    }

    auto candidate_count = [&](VertexId x) {
        std::set<int> cand;
        if (block_of_inner[x] >= 0) cand.insert(block_of_inner[x]);
        if (comp_of[x] >= 0) {
            cand.insert(comp_blocks[static_cast<std::size_t>(comp_of[x])].begin(),
                        comp_blocks[static_cast<std::size_t>(comp_of[x])].end());
        } else {
            for (VertexId wv : g.neighbors(x)) {
                if (block_of_inner[wv] >= 0) cand.insert(block_of_inner[wv]);
                if (comp_of[wv] >= 0)
                    cand.insert(comp_blocks[static_cast<std::size_t>(comp_of[wv])].begin(),
                                comp_blocks[static_cast<std::size_t>(comp_of[wv])].end());
            }
        }
        return cand.size();
    };

    std::vector<VertexId> verts = g.vertices();
    std::vector<char> hit(verts.size(), 0);
    std::vector<WellAttachedWitness> found(verts.size());

    auto work = [&](std::size_t i) {
        VertexId x = verts[i];
        if (candidate_count(x) < need) return;
        if (auto w = is_well_attached(g, layout, blocks, x)) {
            hit[i] = 1;
            found[i] = std::move(*w);
        }
    };

    if (threads <= 1) {
        for (std::size_t i = 0; i < verts.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < verts.size(); i = next.fetch_add(1))
                    work(i);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<WellAttachedWitness> out;
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (hit[i]) out.push_back(std::move(found[i]));
    return out;
}

Graph reduction_b(const Graph& g, const ZoneLayout& layout, std::span<const Block> blocks,
                  std::span<const WellAttachedWitness> witnesses) {
    std::vector<VertexId> u;
    for (const auto& w : witnesses) {
        auto check = validate_well_attached(g, layout, blocks, w);
        if (!check.ok) throw DomainError("reduction_b: invalid witness: " + check.reason);
        u.push_back(w.vertex);
    }
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return g.delete_vertices(u);
}

std::string well_attached_json(const WellAttachedWitness& w, std::span<const Block> blocks) {
    nlohmann::json paths = nlohmann::json::array();
    for (const auto& p : w.paths) paths.push_back(p.vertices);
    nlohmann::json blist = nlohmann::json::array();
    for (int bi : w.blocks) {
        const Block& b = blocks[static_cast<std::size_t>(bi)];
        blist.push_back({{"id", b.id}, {"zone", b.zone_id}, {"inner_size", b.inner.size()}});
    }
    nlohmann::json out{{"vertex", w.vertex}, {"blocks", blist}, {"paths", paths}};
    return out.dump(2);
}

} // namespace apex
