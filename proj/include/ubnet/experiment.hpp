#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ubnet/bipartite_graph.hpp"
#include "ubnet/community.hpp"

namespace ubnet {

// Threshold-sweep protocol: reweight with tf-idf once, then for each
// threshold compare the filtered network against baselines with the same
// number of edges removed uniformly at random.
struct SweepConfig {
    std::vector<double> thresholds = default_thresholds();
    std::size_t replicates = 100;
    std::uint64_t master_seed = 0;
    Side projection_side = Side::users;
    bool louvain_use_weights = true;
    double tfidf_log_base = 2.0;
    std::size_t workers = 0;  // 0 -> hardware concurrency

    // {0.1, 0.5, 1.0, 1.5, ..., 6.0}: irregular first step, then halves.
    static std::vector<double> default_thresholds(double max_tau = 6.0);

    void validate() const;
};

// Measurements of one network (real or baseline) at one threshold.
// Optional fields are null when the projection is degenerate: density
// needs at least 2 surviving nodes, modularity at least one projected
// edge.
struct SweepMetrics {
    std::size_t users_remaining = 0;
    std::size_t objects_remaining = 0;
    std::optional<double> projected_density;
    std::optional<double> modularity;
    std::optional<std::uint32_t> community_count;
};

struct SweepRow {
    double tau = 0.0;
    std::size_t edges_removed = 0;
    double edges_removed_ratio = 0.0;

    SweepMetrics real;
    std::vector<SweepMetrics> random_replicates;  // raw values, one per replicate

    // Aggregates over the replicates; optional aggregates are computed
    // over the replicates where the metric was defined.
    double random_users_mean = 0.0;
    double random_users_std = 0.0;
    std::optional<double> random_density_mean;
    std::optional<double> random_density_std;
    std::optional<double> random_modularity_mean;
    std::optional<double> random_modularity_std;
};

struct SweepReport {
    SweepConfig config;
    std::string rng_algorithm;
    std::string kernel_isa;
    std::string version;
    std::size_t input_users = 0;
    std::size_t input_objects = 0;
    std::size_t input_edges = 0;
    std::uint64_t input_hash = 0;  // FNV-1a over the canonical edge dump
    std::vector<SweepRow> rows;
};

// Removes exactly `edges_to_remove` edges chosen uniformly without
// replacement, then prunes isolated nodes. Deterministic per seed.
BipartiteGraph random_baseline(const BipartiteGraph& graph,
                               std::size_t edges_to_remove,
                               std::uint64_t seed);

// Full protocol. Tau rows and replicates are independent work items run
// on a bounded pool; all streams derive from (master_seed, tau index,
// replicate index), so the report is identical regardless of worker
// count or completion order.
SweepReport run_sweep(const BipartiteGraph& graph, const SweepConfig& config);

// FNV-1a 64 over node keys and weight bit patterns in edge order.
std::uint64_t graph_content_hash(const BipartiteGraph& graph);

// Desk-scale stand-in for the proprietary datasets: k user blocks with
// private object pools plus a handful of objects every user touches.
struct PlantedConfig {
    std::uint32_t blocks = 2;
    std::uint32_t users_per_block = 50;
    std::uint32_t objects_per_block = 40;  // private objects per block
    std::uint32_t popular_objects = 3;     // shared by every user
    std::uint32_t min_private_degree = 8;
    std::uint32_t max_private_degree = 16;
    std::uint32_t min_weight = 1;  // small-integer edge weights
    std::uint32_t max_weight = 5;
};

struct PlantedGraph {
    BipartiteGraph graph;
    Partition truth;  // block membership over the graph's user indices
};

PlantedGraph make_planted_bipartite(const PlantedConfig& config,
                                    std::uint64_t seed);

// fig4_edges_users.csv / fig5_density.csv / fig6_modularity.csv, columns
// tau,metric,real,random_mean,random_std (undefined values print "nan").
void write_sweep_csvs(const SweepReport& report, const std::string& dir);

// Full report with provenance and per-replicate raw values.
std::string sweep_report_json(const SweepReport& report);

}  // namespace ubnet
