#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ubnet {

// Undirected weighted edge of a one-mode graph, stored with a < b.
struct ProjectedEdge {
    std::uint32_t a;
    std::uint32_t b;
    double weight;
};

// One-mode projection result (or any undirected weighted graph loaded
// from an edge list). No self-loops, no parallel edges; isolated nodes
// are representable so density denominators track the node set of the
// bipartite graph at the projection stage.
class ProjectedGraph {
public:
    ProjectedGraph() = default;
    // Takes ownership; normalizes edges to a < b, sorts, and rejects
    // self-loops and duplicate pairs.
    ProjectedGraph(std::vector<std::string> node_keys,
                   std::vector<ProjectedEdge> edges);

    std::size_t node_count() const { return node_keys_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& node_key(std::uint32_t n) const { return node_keys_[n]; }
    std::span<const std::string> node_keys() const { return node_keys_; }
    std::span<const ProjectedEdge> edges() const { return edges_; }

    std::span<const std::uint32_t> neighbors(std::uint32_t n) const;
    std::span<const double> neighbor_weights(std::uint32_t n) const;

    // Weighted degree (sum of incident edge weights).
    double strength(std::uint32_t n) const { return strengths_[n]; }
    std::span<const double> strengths() const { return strengths_; }

    // Sum of edge weights (each undirected edge counted once).
    double total_weight() const { return total_weight_; }

    // 2m / (n (n-1)); throws for fewer than 2 nodes.
    double density() const;

private:
    std::vector<std::string> node_keys_;
    std::vector<ProjectedEdge> edges_;  // sorted (a, b), a < b

    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> nbr_;
    std::vector<double> nbr_w_;
    std::vector<double> strengths_;
    double total_weight_ = 0.0;
};

}  // namespace ubnet
