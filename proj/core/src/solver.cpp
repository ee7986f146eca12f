#include "apex/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <set>

#include "apex/planarity.hpp"

namespace apex {

namespace {

using Clock = std::chrono::steady_clock;

// Witnesses found during the search are subgraphs of the original graph, so
// one remains a valid branching certificate at any node whose deleted set
// misses all of its vertices. Reusing them avoids most re-extractions.
struct WitnessCache {
    struct Entry {
        std::vector<VertexId> vertices; // sorted
    };
    std::vector<Entry> entries;

    const Entry* find_live(const std::vector<VertexId>& deleted) const {
        for (const Entry& e : entries) {
            bool hit = false;
            for (VertexId v : deleted)
                if (std::binary_search(e.vertices.begin(), e.vertices.end(), v)) {
                    hit = true;
                    break;
                }
            if (!hit) return &e;
        }
        return nullptr;
    }
};

struct SearchCtx {
    int k = 0;
    SolverLimits limits;
    Clock::time_point t0;
    std::uint64_t nodes = 0;
    bool aborted = false;
    std::set<std::vector<VertexId>> visited;
    std::set<std::vector<VertexId>> failed; // fully explored, no completion
    WitnessCache cache;
    std::vector<VertexId> answer;
    bool found = false;

    bool over_budget() {
        if (nodes > limits.max_nodes) return true;
        if (limits.time_budget_ms > 0 && (nodes & 0x3f) == 0) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0);
            if (ms.count() > limits.time_budget_ms) return true;
        }
        return false;
    }

    bool dominated(const std::vector<VertexId>& deleted) const {
        // Any failed subset dooms every superset. Deleted sets are tiny
        // (at most k), so scanning their subsets is cheap.
        const std::size_t n = deleted.size();
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<VertexId> sub;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) sub.push_back(deleted[i]);
            if (failed.count(sub)) return true;
        }
        return false;
    }
};

void last_vertex(const Graph& g, std::vector<VertexId>& deleted, SearchCtx& ctx);

void search(const Graph& g, std::vector<VertexId>& deleted, SearchCtx& ctx) {
    if (ctx.found || ctx.aborted) return;
    ++ctx.nodes;
    if (ctx.over_budget()) {
        ctx.aborted = true;
        return;
    }

    const int remaining = ctx.k - static_cast<int>(deleted.size());
    if (remaining == 0) {
        if (is_planar(g)) {
            ctx.answer = deleted;
            ctx.found = true;
        } else {
            ctx.failed.insert(deleted);
        }
        return;
    }

    if (remaining == 1) {
        last_vertex(g, deleted, ctx);
        return;
    }

    std::vector<VertexId> branch;
    if (const auto* cached = ctx.cache.find_live(deleted)) {
        branch = cached->vertices;
    } else {
        auto witness = find_kuratowski(g);
        if (!witness) {
            ctx.answer = deleted;
            ctx.found = true;
            return;
        }
#ifndef NDEBUG
        {
            auto check = validate_witness(g, *witness);
            assert(check.ok);
            assert(!is_planar(witness->subgraph()));
        }
#endif
        branch = witness->all_vertices();
        ctx.cache.entries.push_back({branch});
    }

    std::sort(branch.begin(), branch.end(), [&](VertexId a, VertexId b) {
        auto da = g.degree(a);
        auto db = g.degree(b);
        return da != db ? da > db : a < b;
    });

    for (VertexId v : branch) {
        std::vector<VertexId> next = deleted;
        next.insert(std::upper_bound(next.begin(), next.end(), v), v);
        if (ctx.visited.count(next)) continue;
        ctx.visited.insert(next);
        if (ctx.dominated(next)) continue;
        Graph reduced = g.delete_vertex(v);
        search(reduced, next, ctx);
        if (ctx.found || ctx.aborted) return;
    }
    ctx.failed.insert(deleted);
}

// One deletion left: a working vertex must hit every Kuratowski subgraph of
// g, so every failed probe intersects the candidate set with the witness it
// exposes. Structured instances collapse in a handful of probes.
void last_vertex(const Graph& g, std::vector<VertexId>& deleted, SearchCtx& ctx) {
    std::vector<VertexId> cands;
    if (const auto* cached = ctx.cache.find_live(deleted)) {
        cands = cached->vertices;
    } else {
        auto witness = find_kuratowski(g);
        if (!witness) {
            ctx.answer = deleted;
            ctx.found = true;
            return;
        }
        cands = witness->all_vertices();
        ctx.cache.entries.push_back({cands});
    }

    std::sort(cands.begin(), cands.end(), [&](VertexId a, VertexId b) {
        auto da = g.degree(a);
        auto db = g.degree(b);
        return da != db ? da > db : a < b;
    });

    while (!cands.empty()) {
        ++ctx.nodes;
        if (ctx.over_budget()) {
            ctx.aborted = true;
            return;
        }
        VertexId w = cands.front();
        std::vector<VertexId> leaf = deleted;
        leaf.insert(std::upper_bound(leaf.begin(), leaf.end(), w), w);
        bool skip = ctx.visited.count(leaf) || ctx.dominated(leaf);
        ctx.visited.insert(leaf);
        if (!skip) {
            auto witness = find_kuratowski(g.delete_vertex(w));
            if (!witness) {
                ctx.answer = leaf;
                ctx.found = true;
                return;
            }
            ctx.failed.insert(leaf);
            std::vector<VertexId> alive = witness->all_vertices(); // avoids w, lives in g
            ctx.cache.entries.push_back({alive});
            std::vector<VertexId> kept;
            for (VertexId v : cands)
                if (v != w && std::binary_search(alive.begin(), alive.end(), v)) kept.push_back(v);
            cands = std::move(kept);
            continue;
        }
        cands.erase(cands.begin());
    }
    ctx.failed.insert(deleted);
}

} // namespace

const char* justification_name(Justification j) {
    switch (j) {
    case Justification::None: return "none";
    case Justification::EdgeBound: return "edge-bound";
    case Justification::ForcedExceedsK: return "forced-exceeds-k";
    case Justification::NoFlatZoneNoWellAttached: return "no-flat-zone-no-wellattached";
    case Justification::ExhaustedSearch: return "exhausted-search";
    }
    return "unknown";
}

ApexOutcome solve_exact(const Graph& g, int k, const SolverLimits& limits) {
    if (k < 0) throw DomainError("solve_exact: negative budget");
    auto t0 = Clock::now();

    SearchCtx ctx;
    ctx.k = k;
    ctx.limits = limits;
    ctx.t0 = t0;

    std::vector<VertexId> deleted;
    search(g, deleted, ctx);

    ApexOutcome out;
    out.stats.solver_nodes = ctx.nodes;
    out.stats.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    if (ctx.found) {
        out.status = SolveStatus::Feasible;
        out.apex_set = ctx.answer;
    } else if (ctx.aborted) {
        out.status = SolveStatus::ResourceLimit;
    } else {
        out.status = SolveStatus::Infeasible;
        out.justification = Justification::ExhaustedSearch;
    }
    return out;
}

ApexOutcome brute_force_oracle(const Graph& g, int k, std::uint64_t max_subsets) {
    if (k < 0) throw DomainError("brute_force_oracle: negative budget");
    auto t0 = Clock::now();

    const std::vector<VertexId> verts = g.vertices();
    const std::size_t n = verts.size();

    // Total subsets of size <= k, guarded against the cap.
    std::uint64_t total = 0;
    for (int s = 0; s <= k && static_cast<std::size_t>(s) <= n; ++s) {
        std::uint64_t c = 1;
        for (int i = 0; i < s; ++i) c = c * (n - static_cast<std::uint64_t>(i)) / (static_cast<std::uint64_t>(i) + 1);
        total += c;
        if (total > max_subsets)
            throw ResourceError("brute_force_oracle: subset count exceeds the cap");
    }

    ApexOutcome out;
    auto finish = [&](SolveStatus st) {
        out.status = st;
        out.stats.wall_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
        return out;
    };

    std::vector<std::size_t> idx;
    for (int size = 0; size <= k && static_cast<std::size_t>(size) <= n; ++size) {
        idx.assign(static_cast<std::size_t>(size), 0);
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        while (true) {
            ++out.stats.solver_nodes;
            std::vector<VertexId> subset;
            subset.reserve(idx.size());
            for (std::size_t i : idx) subset.push_back(verts[i]);
            if (is_planar(g.delete_vertices(subset))) {
                out.apex_set = subset;
                return finish(SolveStatus::Feasible);
            }
            // next combination
            bool advanced = false;
            for (std::size_t i = idx.size(); i-- > 0;) {
                if (idx[i] < n - (idx.size() - i)) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced || idx.empty()) break;
        }
    }
    out.justification = Justification::ExhaustedSearch;
    return finish(SolveStatus::Infeasible);
}

bool verify_solution(const Graph& g, std::span<const VertexId> x, int k) {
    for (VertexId v : x)
        if (!g.has_vertex(v)) throw DomainError("verify_solution: vertex absent");
    std::vector<VertexId> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() != x.size()) throw DomainError("verify_solution: duplicate vertex");
    if (static_cast<int>(x.size()) > k) return false;
    return is_planar(g.delete_vertices(sorted));
}

} // namespace apex
