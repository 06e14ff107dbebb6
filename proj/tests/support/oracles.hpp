#pragma once

// Test-only brute-force oracles and fixture generators. These stay
// deliberately naive and independent of the library's algorithmic paths:
// projections by nested-loop intersection, modularity straight from the
// double-sum definition, and maximum modularity by enumerating all set
// partitions.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ubnet/bipartite_graph.hpp"
#include "ubnet/community.hpp"
#include "ubnet/projected_graph.hpp"
#include "ubnet/rng.hpp"

namespace ubnet::testing {

// Small weighted bipartite example: five users, six objects a..f.
// User 1 touches a, b, d; objects a and b are local to users 1 and 2;
// object d reaches users 1-4.
inline BipartiteGraph toy_graph() {
    BipartiteGraph::Builder b;
    b.add("1", "a", 2.0);
    b.add("1", "b", 1.0);
    b.add("1", "d", 3.0);
    b.add("2", "a", 1.0);
    b.add("2", "b", 2.0);
    b.add("2", "d", 1.0);
    b.add("3", "c", 2.0);
    b.add("3", "d", 1.0);
    b.add("3", "e", 1.0);
    b.add("4", "d", 2.0);
    b.add("4", "e", 1.0);
    b.add("4", "f", 2.0);
    b.add("5", "e", 2.0);
    b.add("5", "f", 1.0);
    return std::move(b).build();
}

inline BipartiteGraph random_bipartite(SplitMix64& rng,
                                       std::uint32_t max_users,
                                       std::uint32_t max_objects,
                                       double edge_prob,
                                       double max_weight = 5.0) {
    for (;;) {
        auto nu = static_cast<std::uint32_t>(rng.next_int(1, max_users));
        auto no = static_cast<std::uint32_t>(rng.next_int(1, max_objects));
        BipartiteGraph::Builder b;
        std::size_t edges = 0;
        for (std::uint32_t u = 0; u < nu; ++u) {
            for (std::uint32_t o = 0; o < no; ++o) {
                if (rng.next_double() < edge_prob) {
                    double w = 1.0 + rng.next_double() * (max_weight - 1.0);
                    b.add("u" + std::to_string(u), "o" + std::to_string(o), w);
                    ++edges;
                }
            }
        }
        if (edges > 0) return std::move(b).build();
    }
}

inline ProjectedGraph random_one_mode(SplitMix64& rng, std::uint32_t n,
                                      double edge_prob,
                                      bool integer_weights = false) {
    std::vector<std::string> keys;
    for (std::uint32_t i = 0; i < n; ++i) keys.push_back("n" + std::to_string(i));
    std::vector<ProjectedEdge> edges;
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = a + 1; b < n; ++b) {
            if (rng.next_double() < edge_prob) {
                double w = integer_weights
                               ? static_cast<double>(rng.next_int(1, 4))
                               : 0.25 + rng.next_double() * 3.75;
                edges.push_back(ProjectedEdge{a, b, w});
            }
        }
    }
    return ProjectedGraph(std::move(keys), std::move(edges));
}

// All-pairs common-neighbor counting by nested membership loops.
inline std::vector<ProjectedEdge> brute_project(const BipartiteGraph& g,
                                                Side side) {
    std::uint32_t n = side == Side::users
                          ? static_cast<std::uint32_t>(g.user_count())
                          : static_cast<std::uint32_t>(g.object_count());
    auto nbrs = [&](std::uint32_t i) {
        return side == Side::users ? g.user_neighbors(i)
                                   : g.object_neighbors(i);
    };
    std::vector<ProjectedEdge> out;
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = a + 1; b < n; ++b) {
            std::uint32_t common = 0;
            for (std::uint32_t x : nbrs(a)) {
                for (std::uint32_t y : nbrs(b)) {
                    if (x == y) ++common;
                }
            }
            if (common > 0) {
                out.push_back(
                    ProjectedEdge{a, b, static_cast<double>(common)});
            }
        }
    }
    return out;
}

// Q from the definition: (1/2W) sum_ij [A_ij - k_i k_j / 2W] delta(c_i, c_j).
inline double brute_modularity(const ProjectedGraph& g, const Partition& p) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (const ProjectedEdge& e : g.edges()) {
        a[e.a][e.b] += e.weight;
        a[e.b][e.a] += e.weight;
    }
    std::vector<double> k(n, 0.0);
    double two_w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
        two_w += k[i];
    }
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (p.community[i] == p.community[j]) {
                q += a[i][j] - k[i] * k[j] / two_w;
            }
        }
    }
    return q / two_w;
}

// Successor in restricted-growth-string order; false once exhausted.
inline bool next_rgs(std::vector<std::uint32_t>& rgs) {
    const std::size_t n = rgs.size();
    for (std::size_t i = n; i-- > 1;) {
        std::uint32_t cap = 0;
        for (std::size_t j = 0; j < i; ++j) cap = std::max(cap, rgs[j]);
        if (rgs[i] <= cap) {
            ++rgs[i];
            std::fill(rgs.begin() + i + 1, rgs.end(), 0u);
            return true;
        }
    }
    return false;
}

// Maximum modularity over every set partition; practical for n <= 8
// (Bell(8) = 4140).
inline double enumerate_max_modularity(const ProjectedGraph& g) {
    std::vector<std::uint32_t> rgs(g.node_count(), 0);
    double best = -1.0;
    do {
        Partition p;
        p.community = rgs;
        p.community_count = *std::max_element(rgs.begin(), rgs.end()) + 1;
        best = std::max(best, brute_modularity(g, p));
    } while (next_rgs(rgs));
    return best;
}

}  // namespace ubnet::testing
