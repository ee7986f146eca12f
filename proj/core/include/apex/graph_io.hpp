#pragma once

#include <iosfwd>

#include "apex/graph.hpp"

namespace apex {

enum class GraphFormat { EdgeList, Dimacs };

struct LoadReport {
    Graph graph;
    std::size_t dropped_loops = 0;
    std::size_t dropped_duplicates = 0;
};

// Edge list: one edge per line, two whitespace-separated nonnegative integers;
// lines starting with '#' and blank lines are ignored.
// DIMACS: "c" comments, one "p edge <n> <m>" header, then "e <u> <v>" lines
// with 1-based ids, which are preserved verbatim.
LoadReport load_graph(std::istream& in, GraphFormat format);

void write_edge_list(std::ostream& out, const Graph& g);

// Requires all present ids >= 1 (the format's ids are 1-based).
void write_dimacs(std::ostream& out, const Graph& g);

} // namespace apex
