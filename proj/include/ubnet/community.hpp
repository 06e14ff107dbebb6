#pragma once

#include <cstdint>
#include <vector>

#include "ubnet/projected_graph.hpp"

namespace ubnet {

// Assignment of every graph node to a community. Ids are dense,
// 0..community_count-1 with no gaps after canonicalize().
struct Partition {
    std::vector<std::uint32_t> community;
    std::uint32_t community_count = 0;

    static Partition singletons(std::size_t n);
    static Partition single_community(std::size_t n);

    // Relabels ids in order of first appearance over node index.
    void canonicalize();

    bool operator==(const Partition&) const = default;
};

// Newman modularity Q of a partition over the weighted adjacency:
// Q = sum_c [ W_in_c / 2W - (S_c / 2W)^2 ] with S the node strengths and
// W the total edge weight. Throws InvalidPartitionError when the
// partition does not cover the graph and UndefinedValueError when the
// graph has no nodes or no edge weight.
double modularity(const ProjectedGraph& graph, const Partition& partition);

struct LouvainOptions {
    bool use_weights = true;
    // Minimum ΔQ for a local move; guards floating-point livelock.
    double min_gain = 1e-7;
    // Independent visit orders tried per call (the method is sensitive to
    // node order); the best-Q run wins, ties to the earliest. All orders
    // derive from the one seed, so determinism is unaffected.
    int restarts = 5;
};

struct LouvainResult {
    Partition partition;
    // Q of the partition over the graph as Louvain saw it (weighted or
    // unweighted); NaN for graphs without edges.
    double modularity = 0.0;
    int levels = 0;
};

// Louvain method: iterated local moving plus graph aggregation until no
// move improves Q. Node visit order is reshuffled from `seed` each pass;
// ties between equally good target communities go to the lowest id.
// Deterministic for fixed (graph, seed, options).
LouvainResult louvain(const ProjectedGraph& graph, std::uint64_t seed,
                      const LouvainOptions& options = {});

}  // namespace ubnet
