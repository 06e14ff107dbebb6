#pragma once

#include <cstdint>
#include <string>

#include "ubnet/bipartite_graph.hpp"
#include "ubnet/projected_graph.hpp"

namespace ubnet {

struct NodeRef {
    Side side;
    std::string key;
};

// How to materialize the one-mode projection. Both strategies produce
// identical graphs; `automatic` picks by predicted cost. The bitset path
// packs adjacency rows into 64-bit words and counts pair overlaps with
// the intersect-popcount kernel, which wins once popular nodes make the
// per-object pair expansion quadratic.
enum class ProjectionMethod { automatic, pair_accumulation, bitset };

// One-mode projection onto the chosen side. Every node of that side is
// retained (possibly isolated); two nodes are linked iff they share at
// least one neighbor, with weight = number of shared neighbors
// (unweighted co-occurrence count).
ProjectedGraph project(const BipartiteGraph& graph, Side side,
                       ProjectionMethod method = ProjectionMethod::automatic);

// |N(a) ∩ N(b)| for two nodes on the same side.
std::uint64_t co_neighbor_count(const BipartiteGraph& graph, Side side,
                                std::uint32_t a, std::uint32_t b);

// Key-based variant; refs on different sides -> InvalidArgumentError,
// unknown keys -> NotFoundError.
std::uint64_t co_neighbor_count(const BipartiteGraph& graph, const NodeRef& a,
                                const NodeRef& b);

}  // namespace ubnet
