#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apex/graph.hpp"

namespace apex {

// Tree of bags. Bag ids are 0..bags.size()-1; tree_edges must form a tree
// over them (a single bag needs no edges).
struct TreeDecomposition {
    std::vector<std::vector<VertexId>> bags; // sorted vertex sets
    std::vector<std::pair<int, int>> tree_edges;

    int width() const;
};

struct DecompositionCheck {
    bool valid = true;
    std::string violation; // first failing condition plus a witness
};

// Checks the three defining conditions: every vertex covered, every edge
// covered, and per-vertex bag sets inducing connected subtrees.
DecompositionCheck validate_decomposition(const Graph& g, const TreeDecomposition& td);

// Builds the standard decomposition from an elimination order: the bag of v
// holds v plus its not-yet-eliminated neighbors in the fill-in closure.
TreeDecomposition decomposition_from_order(const Graph& g, std::span<const VertexId> order);

// Min-degree and min-fill orderings, best of both; on graphs of at most 14
// vertices an exact search backstops them, so desk-scale calls never miss a
// reachable target. none means the orderings failed, never a lower bound.
std::optional<TreeDecomposition> heuristic_decompose(const Graph& g, int target_width);

// Exact treewidth by dynamic programming over vertex subsets. Test-scale
// only; DomainError above 14 vertices.
int exact_treewidth(const Graph& g);

int width_budget(int r, int k);

// PACE-style .td text: "s td <bags> <width+1> <universe>", "b <id> <v...>",
// then one tree edge per line (all ids 1-based).
std::string to_td_format(const Graph& g, const TreeDecomposition& td);

} // namespace apex
