#include "apex/hexgrid.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace apex {

namespace {

constexpr VertexId kUnset = std::numeric_limits<VertexId>::max();
constexpr int kInf = std::numeric_limits<int>::max();
constexpr std::uint64_t kGreedyCap = 1200;
constexpr std::uint64_t kPrunedCap = 60000;
constexpr std::uint64_t kStallWindow = 80000;
// Start selection runs its center-estimate BFS through low-degree vertices
// only, so hub shortcuts cannot flatten the distance geometry.
constexpr std::size_t kCenterDegreeCap = 8;

// Vertex sets of the biconnected components, largest first. A subdivision of
// a 2-connected pattern lies inside a single component, so the search never
// needs to cross articulation points.
std::vector<std::vector<VertexId>> biconnected_vertex_sets(const Graph& g) {
    std::vector<int> num(g.universe(), -1), low(g.universe(), 0), parent(g.universe(), -1);
    std::vector<std::pair<VertexId, VertexId>> estack;
    std::vector<std::vector<VertexId>> comps;
    int counter = 0;

    struct Frame {
        VertexId v;
        std::size_t next = 0;
    };

    for (VertexId root : g.vertices()) {
        if (num[root] != -1) continue;
        std::vector<Frame> stack{{root, 0}};
        num[root] = low[root] = counter++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            auto nbrs = g.neighbors(f.v);
            if (f.next < nbrs.size()) {
                VertexId w = nbrs[f.next++];
                if (num[w] == -1) {
                    estack.emplace_back(f.v, w);
                    parent[w] = static_cast<int>(f.v);
                    num[w] = low[w] = counter++;
                    stack.push_back({w, 0});
                } else if (num[w] < num[f.v] && static_cast<int>(w) != parent[f.v]) {
                    estack.emplace_back(f.v, w);
                    low[f.v] = std::min(low[f.v], num[w]);
                }
            } else {
                VertexId v = f.v;
                stack.pop_back();
                if (stack.empty()) break;
                VertexId u = stack.back().v;
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= num[u]) {
                    std::vector<VertexId> comp;
                    while (!estack.empty()) {
                        auto [a, b] = estack.back();
                        estack.pop_back();
                        comp.push_back(a);
                        comp.push_back(b);
                        if (a == u && b == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comp.erase(std::unique(comp.begin(), comp.end()), comp.end());
                    comps.push_back(std::move(comp));
                }
            }
        }
    }
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return comps;
}

struct Alt {
    std::vector<VertexId> path; // anchor..anchor inclusive
};

struct Run {
    int start = 0; // corner index within the cell, 0..5
    int edges = 0; // consecutive unrouted boundary edges
};

struct Undo {
    std::vector<int> placed;          // pattern vertices
    std::vector<int> routed;          // pattern edges
    std::vector<VertexId> marked;     // host vertices
};

struct Choice {
    std::size_t cell = 0;
    Run run;
    std::size_t attempt = 0; // alternatives consumed so far
    Undo undo;
};

class Engine {
public:
    Engine(const Graph& g, const HexGrid& pat, const GridSearchBudget& budget)
        : g_(g), pat_(pat), budget_(budget) {
        // Routing prefers low-degree host vertices: grid corners and
        // subdivision vertices over hubs.
        order_.resize(g.universe());
        for (VertexId v : g.vertices()) {
            std::vector<VertexId> ns(g.neighbors(v).begin(), g.neighbors(v).end());
            std::sort(ns.begin(), ns.end(), [&](VertexId a, VertexId b) {
                auto da = g.degree(a);
                auto db = g.degree(b);
                return da != db ? da < db : a < b;
            });
            order_[v] = std::move(ns);
        }
    }

    std::optional<HexSubdivision> run(const std::shared_ptr<const HexGrid>& grid_handle) {
        std::vector<VertexId> starts = start_candidates();
        if (starts.empty()) return std::nullopt;
        const std::uint64_t slice =
            std::max<std::uint64_t>(1000, budget_.max_steps / starts.size());
        for (VertexId h0 : starts) {
            if (steps_ >= budget_.max_steps) break;
            start_cap_ = std::min(budget_.max_steps, steps_ + slice);
            if (auto found = attempt(h0, grid_handle)) return found;
        }
        return std::nullopt;
    }

private:
    const Graph& g_;
    const HexGrid& pat_;
    GridSearchBudget budget_;
    std::uint64_t steps_ = 0;
    std::uint64_t start_cap_ = 0;
    std::size_t max_ci_ = 0;
    std::uint64_t last_gain_steps_ = 0;

    std::vector<std::vector<VertexId>> order_;
    std::vector<char> used_;
    std::vector<VertexId> pos_;                  // pattern vertex -> host image
    std::vector<std::vector<VertexId>> routed_;  // pattern edge -> host path
    std::vector<Choice> choices_;

    bool out_of_steps() const { return steps_ >= start_cap_; }

    std::vector<int> bfs_dist(VertexId src, bool free_only,
                              std::size_t traverse_degree_cap = std::numeric_limits<std::size_t>::max()) {
        std::vector<int> dist(g_.universe(), kInf);
        std::queue<VertexId> q;
        dist[src] = 0;
        q.push(src);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            ++steps_;
            if (v != src && g_.degree(v) > traverse_degree_cap) continue; // endpoint only
            for (VertexId w : g_.neighbors(v)) {
                if (dist[w] != kInf) continue;
                if (free_only && used_[w]) continue;
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
        return dist;
    }

    // Chain-suppressed skeleton: vertices of degree >= 3, adjacent when a
    // path of degree-2 vertices joins them, weighted by the chain length so
    // the metric matches host distances without pendant-tail distortion.
    struct Skeleton {
        std::vector<VertexId> verts;
        std::vector<std::vector<std::pair<std::uint32_t, int>>> adj; // (index, weight)
        std::vector<std::uint32_t> index; // host vertex -> skeleton index or npos
        static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();
    };

    Skeleton build_skeleton() {
        Skeleton sk;
        sk.index.assign(g_.universe(), Skeleton::npos);
        for (VertexId v : g_.vertices())
            if (g_.degree(v) >= 3) {
                sk.index[v] = static_cast<std::uint32_t>(sk.verts.size());
                sk.verts.push_back(v);
            }
        sk.adj.resize(sk.verts.size());
        for (std::uint32_t i = 0; i < sk.verts.size(); ++i) {
            VertexId v = sk.verts[i];
            for (VertexId first : g_.neighbors(v)) {
                VertexId prev = v;
                VertexId cur = first;
                int length = 1;
                while (g_.degree(cur) == 2) {
                    auto nbrs = g_.neighbors(cur);
                    VertexId nxt = nbrs[0] == prev ? nbrs[1] : nbrs[0];
                    prev = cur;
                    cur = nxt;
                    ++length;
                    ++steps_;
                }
                if (sk.index[cur] != Skeleton::npos && cur != v)
                    sk.adj[i].push_back({sk.index[cur], length});
            }
        }
        return sk;
    }

    // Hub test on skeleton degree: local noise leaves a corner with a few
    // incident chains, a cross-graph hub has many.
    std::vector<int> skeleton_dist(const Skeleton& sk, std::uint32_t src, std::size_t cap) {
        std::vector<int> dist(sk.verts.size(), kInf);
        std::priority_queue<std::pair<int, std::uint32_t>, std::vector<std::pair<int, std::uint32_t>>,
                            std::greater<>>
            q;
        dist[src] = 0;
        q.push({0, src});
        while (!q.empty()) {
            auto [d, i] = q.top();
            q.pop();
            ++steps_;
            if (d > dist[i]) continue;
            if (i != src && sk.adj[i].size() > cap) continue; // hubs end paths
            for (auto [j, w] : sk.adj[i]) {
                if (dist[j] <= d + w) continue;
                dist[j] = d + w;
                q.push({dist[j], j});
            }
        }
        return dist;
    }

    std::vector<VertexId> start_candidates() {
        std::vector<VertexId> verts = g_.vertices();
        if (verts.empty()) return {};
        used_.assign(g_.universe(), 0);

        int corner0 = pat_.cells()[0].corners[0];
        std::size_t need_deg = pat_.degree(corner0);

        Skeleton sk = build_skeleton();
        if (!sk.verts.empty()) {
            for (std::size_t cap : {kCenterDegreeCap, std::numeric_limits<std::size_t>::max()}) {
                // Three peripheral poles; the center minimizes the worst
                // pole distance.
                auto d0 = skeleton_dist(sk, 0, cap);
                std::uint32_t b = 0;
                for (std::uint32_t i = 0; i < sk.verts.size(); ++i)
                    if (d0[i] != kInf && d0[i] > d0[b]) b = i;
                auto db = skeleton_dist(sk, b, cap);
                std::uint32_t c = b;
                for (std::uint32_t i = 0; i < sk.verts.size(); ++i)
                    if (db[i] != kInf && db[i] > db[c]) c = i;
                auto dc = skeleton_dist(sk, c, cap);

                std::uint32_t m = b;
                int best = kInf;
                std::size_t reached = 0;
                for (std::uint32_t i = 0; i < sk.verts.size(); ++i) {
                    if (db[i] == kInf || dc[i] == kInf) continue;
                    ++reached;
                    int score = std::max(db[i], dc[i]);
                    if (score < best) {
                        best = score;
                        m = i;
                    }
                }
                if (2 * reached < sk.verts.size()) continue; // hub-shaped; lift cap
                auto dm = skeleton_dist(sk, m, cap);
                std::uint32_t e = m;
                for (std::uint32_t i = 0; i < sk.verts.size(); ++i)
                    if (dm[i] != kInf && dm[i] > dm[e]) e = i;
                auto de = skeleton_dist(sk, e, cap);

                std::vector<std::uint32_t> pool;
                for (std::uint32_t i = 0; i < sk.verts.size(); ++i) {
                    VertexId v = sk.verts[i];
                    if (g_.degree(v) < need_deg || sk.adj[i].size() > cap) continue;
                    if (db[i] == kInf || dc[i] == kInf || de[i] == kInf) continue;
                    pool.push_back(i);
                }
                if (pool.empty()) continue;
                std::sort(pool.begin(), pool.end(), [&](std::uint32_t x, std::uint32_t y) {
                    int sx = std::max({db[x], dc[x], de[x]});
                    int sy = std::max({db[y], dc[y], de[y]});
                    return sx != sy ? sx < sy : sk.verts[x] < sk.verts[y];
                });
                std::vector<VertexId> out;
                for (std::uint32_t i : pool) {
                    out.push_back(sk.verts[i]);
                    if (out.size() == static_cast<std::size_t>(budget_.max_starts)) break;
                }
                return out;
            }
        }

        // Degenerate hosts (pure cycles): lowest-id vertices of fitting degree.
        std::vector<VertexId> out;
        for (VertexId v : verts) {
            if (g_.degree(v) < need_deg) continue;
            out.push_back(v);
            if (out.size() == static_cast<std::size_t>(budget_.max_starts)) break;
        }
        return out;
    }

    // Exact-length simple paths from `from` to `to`, interiors free at most
    // `cap` expansions; appends to out until `want` paths are collected.
    struct DfsState {
        VertexId to;
        int want;
        const std::vector<int>* dist;
        std::uint64_t cap;
        std::uint64_t spent = 0;
        bool truncated = false;
        std::vector<VertexId> path;
        std::vector<Alt>* out;
    };

    void dfs_paths(DfsState& st, VertexId v, int remaining) {
        if (static_cast<int>(st.out->size()) >= st.want) return;
        if (++st.spent > st.cap || ++steps_ >= start_cap_) {
            st.truncated = true;
            return;
        }
        for (VertexId w : order_[v]) {
            if (w == st.to) {
                if (remaining == 1) {
                    st.path.push_back(w);
                    st.out->push_back(Alt{st.path});
                    st.path.pop_back();
                    if (static_cast<int>(st.out->size()) >= st.want) return;
                }
                continue;
            }
            if (remaining <= 1) continue;
            if (used_[w]) continue;
            if (st.dist && (*st.dist)[w] > remaining - 1) continue;
            st.path.push_back(w);
            used_[w] = 1;
            dfs_paths(st, w, remaining - 1);
            used_[w] = 0;
            st.path.pop_back();
            if (static_cast<int>(st.out->size()) >= st.want || st.truncated) return;
        }
    }

    // Deterministic prefix enumeration: calling with a larger `want` returns
    // the same leading paths plus more, so retries on backtrack line up.
    std::vector<Alt> enumerate_alternatives(VertexId from, VertexId to, int lmin, int want) {
        std::vector<Alt> alts;
        std::vector<int> dist;
        bool have_dist = false;
        for (int len = lmin; len <= lmin + budget_.max_stretch; ++len) {
            if (static_cast<int>(alts.size()) >= want) break;
            if (out_of_steps()) break;
            std::size_t before = alts.size();
            DfsState st{to, want, nullptr, kGreedyCap, 0, false, {from}, &alts};
            dfs_paths(st, from, len);
            if (alts.size() == before && st.truncated && !out_of_steps()) {
                if (!have_dist) {
                    dist = bfs_dist(to, true);
                    have_dist = true;
                }
                DfsState st2{to, want, &dist, kPrunedCap, 0, false, {from}, &alts};
                dfs_paths(st2, from, len);
            }
        }
        return alts;
    }

    // Applies the `attempt`-th alternative (1-based) for the run, enumerating
    // further paths as needed. Advances `attempt` past split rejections.
    bool apply_next_alternative(std::size_t ci, const Run& run, std::size_t& attempt, Undo& undo) {
        VertexId from = pos_[static_cast<std::size_t>(
            pat_.cells()[ci].corners[static_cast<std::size_t>(run.start)])];
        VertexId to = pos_[static_cast<std::size_t>(
            pat_.cells()[ci].corners[static_cast<std::size_t>((run.start + run.edges) % 6)])];
        while (static_cast<int>(attempt) < budget_.max_alternatives) {
            std::size_t want = attempt + 1;
            auto alts = enumerate_alternatives(from, to, run.edges, static_cast<int>(want));
            if (alts.size() < want) return false; // path space exhausted
            ++attempt;
            if (apply_alt(ci, run, alts[want - 1], undo)) return true;
        }
        return false;
    }

    // Cut positions for the run's interior corners along a host path; each
    // corner needs a host vertex of degree at least its pattern degree.
    std::optional<std::vector<std::size_t>> split_positions(const std::vector<VertexId>& path,
                                                            std::span<const int> corners) {
        const std::size_t len = path.size() - 1;
        const std::size_t ell = corners.size() + 1;
        std::vector<std::size_t> cuts;
        std::size_t p = 0;
        for (std::size_t j = 0; j < corners.size(); ++j) {
            std::size_t need = pat_.degree(corners[j]);
            std::size_t limit = len - (ell - 1 - j); // leave room for later edges
            std::size_t q = p + 1;
            while (q <= limit && g_.degree(path[q]) < need) ++q;
            if (q > limit) return std::nullopt;
            cuts.push_back(q);
            p = q;
        }
        return cuts;
    }

    std::optional<Run> next_run(std::size_t ci) const {
        const auto& cell = pat_.cells()[ci];
        const auto& ce = pat_.cell_edges(ci);
        for (int i = 0; i < 6; ++i) {
            if (pos_[static_cast<std::size_t>(cell.corners[static_cast<std::size_t>(i)])] == kUnset)
                continue;
            if (!routed_[static_cast<std::size_t>(ce[static_cast<std::size_t>(i)])].empty()) continue;
            int j = i + 1;
            while (pos_[static_cast<std::size_t>(cell.corners[static_cast<std::size_t>(j % 6)])] ==
                   kUnset)
                ++j;
            return Run{i, j - i};
        }
        return std::nullopt;
    }

    bool cell_done(std::size_t ci) const {
        for (int e : pat_.cell_edges(ci))
            if (routed_[static_cast<std::size_t>(e)].empty()) return false;
        return true;
    }

    bool apply_alt(std::size_t ci, const Run& run, const Alt& alt, Undo& undo) {
        const auto& cell = pat_.cells()[ci];
        std::vector<int> between;
        for (int i = run.start + 1; i < run.start + run.edges; ++i)
            between.push_back(cell.corners[static_cast<std::size_t>(i % 6)]);

        auto cuts = split_positions(alt.path, between);
        if (!cuts) return false;

        undo = Undo{};
        // Corner placements at the cut points.
        std::vector<std::size_t> marks{0};
        for (std::size_t j = 0; j < between.size(); ++j) {
            pos_[static_cast<std::size_t>(between[j])] = alt.path[(*cuts)[j]];
            undo.placed.push_back(between[j]);
            marks.push_back((*cuts)[j]);
        }
        marks.push_back(alt.path.size() - 1);

        for (std::size_t i = 1; i + 1 < alt.path.size(); ++i) {
            used_[alt.path[i]] = 1;
            undo.marked.push_back(alt.path[i]);
        }

        // Route each pattern edge with its slice, oriented to the grid edge.
        for (int j = 0; j < run.edges; ++j) {
            int ca = cell.corners[static_cast<std::size_t>((run.start + j) % 6)];
            int cb = cell.corners[static_cast<std::size_t>((run.start + j + 1) % 6)];
            int e = pat_.edge_index(ca, cb);
            std::vector<VertexId> slice(alt.path.begin() + static_cast<std::ptrdiff_t>(marks[static_cast<std::size_t>(j)]),
                                        alt.path.begin() + static_cast<std::ptrdiff_t>(marks[static_cast<std::size_t>(j) + 1]) + 1);
            if (pat_.edges()[static_cast<std::size_t>(e)].first != ca)
                std::reverse(slice.begin(), slice.end());
            routed_[static_cast<std::size_t>(e)] = std::move(slice);
            undo.routed.push_back(e);
        }
        return true;
    }

    void undo_choice(const Undo& undo) {
        for (int v : undo.placed) pos_[static_cast<std::size_t>(v)] = kUnset;
        for (VertexId h : undo.marked) used_[h] = 0;
        for (int e : undo.routed) routed_[static_cast<std::size_t>(e)].clear();
    }

    bool backtrack(std::size_t& ci) {
        while (!choices_.empty()) {
            Choice& ch = choices_.back();
            undo_choice(ch.undo);
            if (!out_of_steps() && apply_next_alternative(ch.cell, ch.run, ch.attempt, ch.undo)) {
                ci = ch.cell;
                return true;
            }
            choices_.pop_back();
        }
        return false;
    }

    std::optional<HexSubdivision> attempt(VertexId h0, const std::shared_ptr<const HexGrid>& grid_handle) {
        pos_.assign(pat_.vertex_count(), kUnset);
        routed_.assign(pat_.edge_count(), {});
        used_.assign(g_.universe(), 0);
        choices_.clear();

        int corner0 = pat_.cells()[0].corners[0];
        pos_[static_cast<std::size_t>(corner0)] = h0;
        used_[h0] = 1;

        std::size_t ci = 0;
        max_ci_ = 0;
        last_gain_steps_ = steps_;
        while (true) {
            if (out_of_steps()) return std::nullopt;
            if (ci == pat_.cells().size()) return assemble(grid_handle);
            auto run = next_run(ci);
            if (!run) {
                if (!cell_done(ci))
                    throw std::logic_error("hex search: cell with no anchored run");
                ++ci;
                continue;
            }
            Choice ch;
            ch.cell = ci;
            ch.run = *run;
            if (apply_next_alternative(ci, *run, ch.attempt, ch.undo)) {
                choices_.push_back(std::move(ch));
                if (ci > max_ci_) {
                    max_ci_ = ci;
                    last_gain_steps_ = steps_;
                }
                continue;
            }
            // A start that keeps backtracking without reaching new cells is
            // hopeless; hand its budget to the next candidate.
            if (steps_ - last_gain_steps_ > kStallWindow) return std::nullopt;
            if (!backtrack(ci)) return std::nullopt;
        }
    }

    std::optional<HexSubdivision> assemble(const std::shared_ptr<const HexGrid>& grid_handle) {
        HexSubdivision sub;
        sub.grid = grid_handle;
        sub.branch_image = pos_;
        sub.edge_paths = routed_;
        auto check = validate_subdivision(g_, sub);
        if (!check.ok)
            throw std::logic_error("hex search produced an invalid subdivision: " + check.reason);
        return sub;
    }
};

} // namespace

std::optional<HexSubdivision> find_hex_subdivision(const Graph& g,
                                                   std::shared_ptr<const HexGrid> pattern,
                                                   const GridSearchBudget& budget) {
    const HexGrid& pat = *pattern;
    if (g.vertex_count() < pat.vertex_count() || g.edge_count() < pat.edge_count())
        return std::nullopt;

    for (const auto& comp : biconnected_vertex_sets(g)) {
        if (comp.size() < pat.vertex_count()) break; // sorted by size
        Graph candidate = g.induced(comp);
        if (candidate.edge_count() < pat.edge_count()) continue;
        Engine engine(candidate, pat, budget);
        if (auto found = engine.run(pattern)) return found;
    }
    return std::nullopt;
}

std::optional<HexSubdivision> find_hex_subdivision(const Graph& g, int radius,
                                                   const GridSearchBudget& budget) {
    return find_hex_subdivision(g, std::make_shared<HexGrid>(radius), budget);
}

} // namespace apex
