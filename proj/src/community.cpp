#include "ubnet/community.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "ubnet/error.hpp"
#include "ubnet/kernels.hpp"
#include "ubnet/rng.hpp"

namespace ubnet {

Partition Partition::singletons(std::size_t n) {
    Partition p;
    p.community.resize(n);
    std::iota(p.community.begin(), p.community.end(), 0u);
    p.community_count = static_cast<std::uint32_t>(n);
    return p;
}

Partition Partition::single_community(std::size_t n) {
    Partition p;
    p.community.assign(n, 0);
    p.community_count = n > 0 ? 1 : 0;
    return p;
}

void Partition::canonicalize() {
    constexpr std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::uint32_t> relabel(community_count, kUnset);
    std::uint32_t next = 0;
    for (std::uint32_t& c : community) {
        if (relabel[c] == kUnset) relabel[c] = next++;
        c = relabel[c];
    }
    community_count = next;
}

double modularity(const ProjectedGraph& graph, const Partition& partition) {
    const std::size_t n = graph.node_count();
    if (n == 0) {
        throw UndefinedValueError("modularity undefined on an empty graph");
    }
    if (partition.community.size() != n) {
        throw InvalidPartitionError("partition does not cover all nodes");
    }
    const std::uint32_t nc = partition.community_count;
    for (std::uint32_t c : partition.community) {
        if (c >= nc) {
            throw InvalidPartitionError("community id out of range");
        }
    }
    const double two_w = 2.0 * graph.total_weight();
    if (two_w <= 0.0) {
        throw UndefinedValueError("modularity undefined without edge weight");
    }

    std::vector<double> internal(nc, 0.0);  // 2x internal weight per community
    std::vector<double> strength(nc, 0.0);
    for (const ProjectedEdge& e : graph.edges()) {
        if (partition.community[e.a] == partition.community[e.b]) {
            internal[partition.community[e.a]] += 2.0 * e.weight;
        }
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        strength[partition.community[i]] += graph.strength(i);
    }
    double q = kernels::sum_f64(internal) / two_w -
               kernels::dot_f64(strength, strength) / (two_w * two_w);
    return q;
}

namespace {

// Louvain working graph: symmetric adjacency stored as directed entries,
// plus a self-loop weight per node. Aggregated communities become nodes
// whose loop carries twice the internal weight, so 2W is preserved
// across levels.
struct WorkGraph {
    std::vector<std::size_t> off;
    std::vector<std::uint32_t> nbr;
    std::vector<double> w;
    std::vector<double> loop;
    std::vector<double> strength;
    double two_w = 0.0;

    std::size_t size() const { return loop.size(); }
};

WorkGraph from_projected(const ProjectedGraph& g, bool use_weights) {
    const std::size_t n = g.node_count();
    WorkGraph wg;
    wg.off.assign(n + 1, 0);
    wg.loop.assign(n, 0.0);
    wg.strength.assign(n, 0.0);
    std::size_t entries = 0;
    for (std::uint32_t i = 0; i < n; ++i) entries += g.neighbors(i).size();
    wg.nbr.reserve(entries);
    wg.w.reserve(entries);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto nbrs = g.neighbors(i);
        auto ws = g.neighbor_weights(i);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            wg.nbr.push_back(nbrs[k]);
            double weight = use_weights ? ws[k] : 1.0;
            wg.w.push_back(weight);
            wg.strength[i] += weight;
        }
        wg.off[i + 1] = wg.nbr.size();
    }
    wg.two_w = kernels::sum_f64(wg.strength);
    return wg;
}

// One round of local moving. Returns true when at least one node moved.
bool one_level(const WorkGraph& g, SplitMix64& rng, double min_gain,
               std::vector<std::uint32_t>& comm) {
    const std::size_t n = g.size();
    comm.resize(n);
    std::iota(comm.begin(), comm.end(), 0u);
    std::vector<double> tot(g.strength);  // strength sum per community

    std::vector<double> nbr_weight(n, 0.0);  // d_ic scratch
    std::vector<std::uint32_t> touched;
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);

    bool any_move = false;
    bool moved_this_pass = true;
    while (moved_this_pass) {
        moved_this_pass = false;
        shuffle(order, rng);
        for (std::uint32_t node : order) {
            const std::uint32_t c_old = comm[node];
            const double k_i = g.strength[node];

            touched.clear();
            nbr_weight[c_old] = 0.0;
            touched.push_back(c_old);
            for (std::size_t e = g.off[node]; e < g.off[node + 1]; ++e) {
                std::uint32_t j = g.nbr[e];
                if (j == node) continue;
                std::uint32_t c = comm[j];
                if (nbr_weight[c] == 0.0 && c != c_old) touched.push_back(c);
                nbr_weight[c] += g.w[e];
            }

            tot[c_old] -= k_i;
            const double gain_stay =
                nbr_weight[c_old] - tot[c_old] * k_i / g.two_w;
            double best_gain = -std::numeric_limits<double>::infinity();
            std::uint32_t best_comm = c_old;
            for (std::uint32_t c : touched) {
                if (c == c_old) continue;
                double gain = nbr_weight[c] - tot[c] * k_i / g.two_w;
                if (gain > best_gain ||
                    (gain == best_gain && c < best_comm)) {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            // Moving must beat staying by more than min_gain so every
            // accepted move strictly increases Q.
            if (best_comm != c_old && best_gain > gain_stay + min_gain) {
                comm[node] = best_comm;
                tot[best_comm] += k_i;
                moved_this_pass = true;
                any_move = true;
            } else {
                tot[c_old] += k_i;
            }
            for (std::uint32_t c : touched) nbr_weight[c] = 0.0;
        }
    }
    return any_move;
}

WorkGraph aggregate(const WorkGraph& g, const std::vector<std::uint32_t>& comm,
                    std::uint32_t n_comm) {
    WorkGraph out;
    out.loop.assign(n_comm, 0.0);
    out.strength.assign(n_comm, 0.0);
    std::unordered_map<std::uint64_t, double> cross;
    for (std::uint32_t i = 0; i < g.size(); ++i) {
        const std::uint32_t ci = comm[i];
        out.loop[ci] += g.loop[i];
        for (std::size_t e = g.off[i]; e < g.off[i + 1]; ++e) {
            const std::uint32_t cj = comm[g.nbr[e]];
            if (ci == cj) {
                out.loop[ci] += g.w[e];
            } else {
                cross[(static_cast<std::uint64_t>(ci) << 32) | cj] += g.w[e];
            }
        }
    }
    // Deterministic CSR: bucket the directed entries by source.
    out.off.assign(n_comm + 1, 0);
    for (const auto& [key, weight] : cross) ++out.off[(key >> 32) + 1];
    for (std::size_t i = 1; i <= n_comm; ++i) out.off[i] += out.off[i - 1];
    out.nbr.resize(cross.size());
    out.w.resize(cross.size());
    {
        std::vector<std::size_t> cur(out.off.begin(), out.off.end() - 1);
        // Fill rows in source order, then sort each row by target for a
        // layout independent of hash iteration order.
        std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(n_comm);
        for (const auto& [key, weight] : cross) {
            rows[key >> 32].emplace_back(static_cast<std::uint32_t>(key),
                                         weight);
        }
        for (std::uint32_t c = 0; c < n_comm; ++c) {
            std::sort(rows[c].begin(), rows[c].end());
            for (const auto& [target, weight] : rows[c]) {
                out.nbr[cur[c]] = target;
                out.w[cur[c]++] = weight;
            }
        }
    }
    for (std::uint32_t c = 0; c < n_comm; ++c) {
        double s = out.loop[c];
        for (std::size_t e = out.off[c]; e < out.off[c + 1]; ++e) {
            s += out.w[e];
        }
        out.strength[c] = s;
    }
    out.two_w = g.two_w;
    return out;
}

double work_modularity(const WorkGraph& g,
                       const std::vector<std::uint32_t>& comm,
                       std::uint32_t n_comm) {
    std::vector<double> internal(n_comm, 0.0);
    std::vector<double> strength(n_comm, 0.0);
    for (std::uint32_t i = 0; i < g.size(); ++i) {
        internal[comm[i]] += g.loop[i];
        strength[comm[i]] += g.strength[i];
        for (std::size_t e = g.off[i]; e < g.off[i + 1]; ++e) {
            if (comm[g.nbr[e]] == comm[i]) internal[comm[i]] += g.w[e];
        }
    }
    return kernels::sum_f64(internal) / g.two_w -
           kernels::dot_f64(strength, strength) / (g.two_w * g.two_w);
}

}  // namespace

namespace {

LouvainResult louvain_single(const WorkGraph& base_graph, std::uint64_t seed,
                             double min_gain) {
    const std::size_t n = base_graph.size();
    SplitMix64 rng(seed);
    WorkGraph level_graph = base_graph;

    // node -> community in the original node space, refined level by level
    std::vector<std::uint32_t> global(n);
    std::iota(global.begin(), global.end(), 0u);

    int levels = 0;
    while (true) {
        std::vector<std::uint32_t> comm;
        bool moved = one_level(level_graph, rng, min_gain, comm);
        if (!moved) break;

        Partition level_part{comm,
                             static_cast<std::uint32_t>(level_graph.size())};
        level_part.canonicalize();
        ++levels;
        for (std::uint32_t& c : global) c = level_part.community[c];

        if (level_part.community_count == level_graph.size()) {
            break;  // moves without merges; aggregating would not change
        }
        level_graph = aggregate(level_graph, level_part.community,
                                level_part.community_count);
    }

    LouvainResult result;
    result.partition.community = std::move(global);
    result.partition.community_count = static_cast<std::uint32_t>(n);
    result.partition.canonicalize();
    result.levels = levels;
    result.modularity = work_modularity(base_graph, result.partition.community,
                                        result.partition.community_count);
    return result;
}

}  // namespace

LouvainResult louvain(const ProjectedGraph& graph, std::uint64_t seed,
                      const LouvainOptions& options) {
    const std::size_t n = graph.node_count();
    if (n == 0) {
        throw InvalidArgumentError("louvain requires at least one node");
    }
    if (options.restarts < 1) {
        throw InvalidArgumentError("louvain needs at least one restart");
    }

    if (graph.edge_count() == 0) {
        LouvainResult result;
        result.partition = Partition::singletons(n);
        result.modularity = std::numeric_limits<double>::quiet_NaN();
        result.levels = 0;
        return result;
    }

    const WorkGraph base_graph = from_projected(graph, options.use_weights);
    LouvainResult best;
    for (int r = 0; r < options.restarts; ++r) {
        LouvainResult run = louvain_single(
            base_graph, derive_seed(seed, static_cast<std::uint64_t>(r)),
            options.min_gain);
        if (r == 0 || run.modularity > best.modularity) {
            best = std::move(run);
        }
    }
    return best;
}

}  // namespace ubnet
