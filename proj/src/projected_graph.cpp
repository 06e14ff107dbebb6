#include "ubnet/projected_graph.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ubnet/bipartite_graph.hpp"
#include "ubnet/error.hpp"

namespace ubnet {

ProjectedGraph::ProjectedGraph(std::vector<std::string> node_keys,
                               std::vector<ProjectedEdge> edges)
    : node_keys_(std::move(node_keys)), edges_(std::move(edges)) {
    const std::size_t n = node_keys_.size();
    for (ProjectedEdge& e : edges_) {
        if (e.a == e.b) {
            throw InvalidArgumentError("self-loop in one-mode graph");
        }
        if (e.a >= n || e.b >= n) {
            throw InvalidArgumentError("edge endpoint out of range");
        }
        if (!std::isfinite(e.weight) || e.weight <= 0.0) {
            throw InvalidArgumentError(
                "one-mode edge weight must be finite and > 0");
        }
        if (e.a > e.b) std::swap(e.a, e.b);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const ProjectedEdge& x, const ProjectedEdge& y) {
                  return x.a != y.a ? x.a < y.a : x.b < y.b;
              });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].a == edges_[i].a && edges_[i - 1].b == edges_[i].b) {
            throw InvalidArgumentError("duplicate edge in one-mode graph");
        }
    }

    offsets_.assign(n + 1, 0);
    for (const ProjectedEdge& e : edges_) {
        ++offsets_[e.a + 1];
        ++offsets_[e.b + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) offsets_[i] += offsets_[i - 1];
    nbr_.resize(2 * edges_.size());
    nbr_w_.resize(2 * edges_.size());
    std::vector<std::size_t> cur(offsets_.begin(), offsets_.end() - 1);
    for (const ProjectedEdge& e : edges_) {
        nbr_[cur[e.a]] = e.b;
        nbr_w_[cur[e.a]++] = e.weight;
        nbr_[cur[e.b]] = e.a;
        nbr_w_[cur[e.b]++] = e.weight;
    }

    strengths_.assign(n, 0.0);
    for (const ProjectedEdge& e : edges_) {
        strengths_[e.a] += e.weight;
        strengths_[e.b] += e.weight;
        total_weight_ += e.weight;
    }
}

std::span<const std::uint32_t> ProjectedGraph::neighbors(
    std::uint32_t node) const {
    return {nbr_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
}

std::span<const double> ProjectedGraph::neighbor_weights(
    std::uint32_t node) const {
    return {nbr_w_.data() + offsets_[node],
            offsets_[node + 1] - offsets_[node]};
}

double ProjectedGraph::density() const {
    return one_mode_density(node_count(), edge_count());
}

}  // namespace ubnet
