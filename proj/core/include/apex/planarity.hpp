#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apex/graph.hpp"

namespace apex {

enum class KuratowskiKind { K5, K33 };

// A subdivision of K5 or K3,3 inside a host graph. Paths are indexed
// canonically: for K5, pair (i,j), i<j, in lexicographic order over the five
// branch vertices; for K3,3, branch_vertices[0..2] form one class,
// [3..5] the other, and path i*3+j joins class vertices i and j.
struct KuratowskiWitness {
    KuratowskiKind kind = KuratowskiKind::K5;
    std::vector<VertexId> branch_vertices;
    std::vector<PathInGraph> edge_paths;

    std::vector<VertexId> all_vertices() const; // sorted, unique
    Graph subgraph() const;                     // the union, on host ids
};

struct WitnessCheck {
    bool ok = true;
    std::string reason;
};

// Structural validation: sizes, path validity in host, endpoint pattern,
// pairwise internal disjointness. Does not test nonplanarity of the union.
WitnessCheck validate_witness(const Graph& host, const KuratowskiWitness& w);

bool is_planar(const Graph& g);

// none iff planar. The returned witness is deterministic, edge-minimal as a
// subgraph, and further shrunk by routing edge-paths through chords among
// their own vertices.
std::optional<KuratowskiWitness> find_kuratowski(const Graph& g);

// Cyclic neighbor order per vertex. order[v] is empty for absent vertices.
struct RotationSystem {
    std::vector<std::vector<VertexId>> order;
};

// none iff nonplanar.
std::optional<RotationSystem> planar_embedding(const Graph& g);

// Faces traced from the rotation system, summed over components. A component
// with no edges counts one face.
std::size_t count_faces(const Graph& g, const RotationSystem& rs);

// Checks v - e + f == 2 on every connected component; a genus-0 certificate,
// i.e. an independent confirmation that the rotation system is planar.
bool embedding_satisfies_euler(const Graph& g, const RotationSystem& rs);

} // namespace apex
