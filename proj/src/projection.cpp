#include "ubnet/projection.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "ubnet/error.hpp"
#include "ubnet/kernels.hpp"

namespace ubnet {

namespace {

struct SideView {
    std::size_t n;        // nodes on the projected side
    std::size_t n_other;  // nodes on the opposite side
};

SideView side_view(const BipartiteGraph& g, Side side) {
    if (side == Side::users) return {g.user_count(), g.object_count()};
    return {g.object_count(), g.user_count()};
}

std::span<const std::uint32_t> neighbors_of(const BipartiteGraph& g, Side side,
                                            std::uint32_t node) {
    return side == Side::users ? g.user_neighbors(node)
                               : g.object_neighbors(node);
}

std::vector<std::string> side_keys(const BipartiteGraph& g, Side side) {
    SideView v = side_view(g, side);
    std::vector<std::string> keys;
    keys.reserve(v.n);
    for (std::uint32_t i = 0; i < v.n; ++i) {
        keys.push_back(side == Side::users ? g.user_key(i) : g.object_key(i));
    }
    return keys;
}

// Expand each opposite-side node into all pairs of its neighbors and
// accumulate pair counts in a hash map.
std::vector<ProjectedEdge> project_pairs(const BipartiteGraph& g, Side side) {
    Side other = side == Side::users ? Side::objects : Side::users;
    std::unordered_map<std::uint64_t, std::uint32_t> counts;
    for (std::uint32_t x = 0; x < side_view(g, other).n; ++x) {
        auto nbrs = neighbors_of(g, other, x);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                // Neighbor lists are ascending, so nbrs[i] < nbrs[j].
                std::uint64_t key =
                    (static_cast<std::uint64_t>(nbrs[i]) << 32) | nbrs[j];
                ++counts[key];
            }
        }
    }
    std::vector<ProjectedEdge> edges;
    edges.reserve(counts.size());
    for (const auto& [key, c] : counts) {
        edges.push_back(ProjectedEdge{static_cast<std::uint32_t>(key >> 32),
                                      static_cast<std::uint32_t>(key),
                                      static_cast<double>(c)});
    }
    return edges;
}

// Pack neighbor sets into bit rows and count overlaps pairwise.
std::vector<ProjectedEdge> project_bitset(const BipartiteGraph& g, Side side) {
    SideView v = side_view(g, side);
    const std::size_t words = (v.n_other + 63) / 64;
    std::vector<std::uint64_t> rows(v.n * words, 0);
    for (std::uint32_t i = 0; i < v.n; ++i) {
        std::uint64_t* row = rows.data() + i * words;
        for (std::uint32_t nb : neighbors_of(g, side, i)) {
            row[nb >> 6] |= 1ULL << (nb & 63);
        }
    }
    const auto& k = kernels::active();
    std::vector<ProjectedEdge> edges;
    for (std::uint32_t a = 0; a < v.n; ++a) {
        const std::uint64_t* row_a = rows.data() + a * words;
        for (std::uint32_t b = a + 1; b < v.n; ++b) {
            std::uint64_t c =
                k.intersect_popcount(row_a, rows.data() + b * words, words);
            if (c > 0) {
                edges.push_back(ProjectedEdge{a, b, static_cast<double>(c)});
            }
        }
    }
    return edges;
}

ProjectionMethod choose_method(const BipartiteGraph& g, Side side) {
    Side other = side == Side::users ? Side::objects : Side::users;
    SideView v = side_view(g, side);
    if (v.n < 2) return ProjectionMethod::pair_accumulation;

    double pair_emissions = 0.0;
    for (std::uint32_t x = 0; x < side_view(g, other).n; ++x) {
        double d = static_cast<double>(neighbors_of(g, other, x).size());
        pair_emissions += d * (d - 1.0) / 2.0;
    }
    const double words = static_cast<double>((v.n_other + 63) / 64);
    const double bitset_ops =
        static_cast<double>(v.n) * static_cast<double>(v.n - 1) / 2.0 * words;
    const double bitset_bytes = static_cast<double>(v.n) * words * 8.0;

    // Hash accumulation costs roughly an order of magnitude more per
    // operation than a word of AND+popcount; prefer bitset whenever its
    // op count is within that factor and the rows fit comfortably.
    if (bitset_bytes <= 2e9 && bitset_ops <= 24.0 * pair_emissions) {
        return ProjectionMethod::bitset;
    }
    return ProjectionMethod::pair_accumulation;
}

}  // namespace

ProjectedGraph project(const BipartiteGraph& graph, Side side,
                       ProjectionMethod method) {
    if (graph.user_count() == 0 && graph.object_count() == 0) {
        throw EmptyGraphError("cannot project an empty graph");
    }
    if (method == ProjectionMethod::automatic) {
        method = choose_method(graph, side);
    }
    std::vector<ProjectedEdge> edges =
        method == ProjectionMethod::bitset ? project_bitset(graph, side)
                                           : project_pairs(graph, side);
    return ProjectedGraph(side_keys(graph, side), std::move(edges));
}

std::uint64_t co_neighbor_count(const BipartiteGraph& graph, Side side,
                                std::uint32_t a, std::uint32_t b) {
    SideView v = side_view(graph, side);
    if (a >= v.n || b >= v.n) {
        throw NotFoundError("node index out of range");
    }
    if (a == b) {
        throw InvalidArgumentError("co-neighbor count needs distinct nodes");
    }
    auto na = neighbors_of(graph, side, a);
    auto nb = neighbors_of(graph, side, b);
    std::uint64_t count = 0;
    std::size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
        if (na[i] < nb[j]) {
            ++i;
        } else if (nb[j] < na[i]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

std::uint64_t co_neighbor_count(const BipartiteGraph& graph, const NodeRef& a,
                                const NodeRef& b) {
    if (a.side != b.side) {
        throw InvalidArgumentError(
            "co-neighbor count requires nodes on the same side");
    }
    auto resolve = [&](const NodeRef& r) {
        auto idx = r.side == Side::users ? graph.find_user(r.key)
                                         : graph.find_object(r.key);
        if (!idx) {
            throw NotFoundError("unknown " + std::string(side_name(r.side)) +
                                " node: " + r.key);
        }
        return *idx;
    };
    return co_neighbor_count(graph, a.side, resolve(a), resolve(b));
}

}  // namespace ubnet
