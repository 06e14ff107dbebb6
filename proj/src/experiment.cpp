#include "ubnet/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "ubnet/error.hpp"
#include "ubnet/kernels.hpp"
#include "ubnet/projection.hpp"
#include "ubnet/rng.hpp"
#include "ubnet/tfidf.hpp"
#include "ubnet/version.hpp"

namespace ubnet {

namespace {

// Stream purposes hashed into derived seeds.
constexpr std::uint64_t kStreamBaseline = 1;
constexpr std::uint64_t kStreamLouvain = 2;

}  // namespace

std::vector<double> SweepConfig::default_thresholds(double max_tau) {
    std::vector<double> taus = {0.1};
    for (double t = 0.5; t <= max_tau + 1e-9; t += 0.5) taus.push_back(t);
    return taus;
}

void SweepConfig::validate() const {
    if (thresholds.empty()) {
        throw InvalidArgumentError("threshold list must not be empty");
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!std::isfinite(thresholds[i]) || thresholds[i] < 0.0) {
            throw InvalidArgumentError("thresholds must be finite and >= 0");
        }
        if (i > 0 && thresholds[i] <= thresholds[i - 1]) {
            throw InvalidArgumentError("thresholds must be strictly ascending");
        }
    }
    if (replicates < 1) {
        throw InvalidArgumentError("replicates must be >= 1");
    }
    if (!std::isfinite(tfidf_log_base) || tfidf_log_base <= 1.0) {
        throw InvalidArgumentError("tf-idf log base must be > 1");
    }
}

BipartiteGraph random_baseline(const BipartiteGraph& graph,
                               std::size_t edges_to_remove,
                               std::uint64_t seed) {
    const std::size_t m = graph.edge_count();
    if (edges_to_remove > m) {
        throw InvalidArgumentError(
            "cannot remove more edges than the graph has");
    }
    SplitMix64 rng(seed);
    auto removed = sample_without_replacement(
        static_cast<std::uint32_t>(m),
        static_cast<std::uint32_t>(edges_to_remove), rng);
    std::vector<bool> keep(m, true);
    for (std::uint32_t e : removed) keep[e] = false;
    return graph.induced_by_edges(keep);
}

std::uint64_t graph_content_hash(const BipartiteGraph& graph) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a offset basis
    auto absorb = [&h](const void* data, std::size_t len) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ULL;
        }
    };
    for (const Edge& e : graph.edges()) {
        const std::string& u = graph.user_key(e.user);
        const std::string& o = graph.object_key(e.object);
        absorb(u.data(), u.size());
        absorb("\t", 1);
        absorb(o.data(), o.size());
        absorb("\t", 1);
        absorb(&e.weight, sizeof(e.weight));
        absorb("\n", 1);
    }
    return h;
}

namespace {

SweepMetrics measure(const BipartiteGraph& g, Side side, bool use_weights,
                     std::uint64_t louvain_seed) {
    SweepMetrics out;
    out.users_remaining = g.user_count();
    out.objects_remaining = g.object_count();
    const std::size_t side_nodes =
        side == Side::users ? g.user_count() : g.object_count();
    if (side_nodes < 2) return out;

    ProjectedGraph proj = project(g, side);
    out.projected_density = proj.density();
    if (proj.edge_count() == 0) return out;

    LouvainResult lr =
        louvain(proj, louvain_seed, LouvainOptions{use_weights, 1e-7});
    out.modularity = lr.modularity;
    out.community_count = lr.partition.community_count;
    return out;
}

struct Aggregate {
    double mean = 0.0;
    double std_dev = 0.0;
    std::size_t count = 0;
};

template <typename Get>
Aggregate aggregate_over(const std::vector<SweepMetrics>& reps, Get&& get) {
    std::vector<double> values;
    values.reserve(reps.size());
    for (const SweepMetrics& m : reps) {
        if (auto v = get(m)) values.push_back(*v);
    }
    Aggregate a;
    a.count = values.size();
    if (values.empty()) return a;
    a.mean = kernels::sum_f64(values) / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.std_dev = std::sqrt(ss / static_cast<double>(values.size()));
    return a;
}

}  // namespace

SweepReport run_sweep(const BipartiteGraph& graph, const SweepConfig& config) {
    config.validate();
    if (graph.empty()) {
        throw EmptyGraphError("cannot sweep an empty graph");
    }

    SweepReport report;
    report.config = config;
    report.rng_algorithm = SplitMix64::algorithm_name;
    report.kernel_isa = kernels::active().name;
    report.version = kVersion;
    report.input_users = graph.user_count();
    report.input_objects = graph.object_count();
    report.input_edges = graph.edge_count();
    report.input_hash = graph_content_hash(graph);

    const BipartiteGraph reweighted =
        tfidf_reweight(graph, TfidfOptions{config.tfidf_log_base});
    const std::size_t m = reweighted.edge_count();
    const std::size_t n_tau = config.thresholds.size();
    const std::size_t n_rep = config.replicates;

    report.rows.assign(n_tau, SweepRow{});
    for (std::size_t t = 0; t < n_tau; ++t) {
        report.rows[t].tau = config.thresholds[t];
        report.rows[t].random_replicates.assign(n_rep, SweepMetrics{});
    }

    // Work items: (tau, replicate) with replicate 0 = the real network.
    // Results land in pre-sized slots, so scheduling cannot affect the
    // report.
    struct Task {
        std::size_t tau_index;
        std::size_t replicate;  // 0 = real, 1..n_rep = baselines
    };
    std::vector<Task> tasks;
    tasks.reserve(n_tau * (n_rep + 1));
    for (std::size_t t = 0; t < n_tau; ++t) {
        for (std::size_t r = 0; r <= n_rep; ++r) {
            tasks.push_back(Task{t, r});
        }
    }

    // The real filtered networks (and their removal counts) are needed by
    // every baseline task of the same tau; compute them first.
    std::vector<std::size_t> removal(n_tau, 0);
    {
        for (std::size_t t = 0; t < n_tau; ++t) {
            std::size_t removed = 0;
            for (const Edge& e : reweighted.edges()) {
                if (e.weight < config.thresholds[t]) ++removed;
            }
            removal[t] = removed;
            report.rows[t].edges_removed = removed;
            report.rows[t].edges_removed_ratio =
                m > 0 ? static_cast<double>(removed) / static_cast<double>(m)
                      : 0.0;
        }
    }

    auto run_task = [&](const Task& task) {
        const std::size_t t = task.tau_index;
        const std::uint64_t louvain_seed = derive_seed(
            config.master_seed, t, task.replicate, kStreamLouvain);
        SweepMetrics metrics;
        if (task.replicate == 0) {
            BipartiteGraph filtered =
                filter_by_threshold(reweighted, config.thresholds[t]);
            metrics = measure(filtered, config.projection_side,
                              config.louvain_use_weights, louvain_seed);
            report.rows[t].real = metrics;
        } else {
            const std::uint64_t removal_seed = derive_seed(
                config.master_seed, t, task.replicate, kStreamBaseline);
            BipartiteGraph baseline =
                random_baseline(reweighted, removal[t], removal_seed);
            metrics = measure(baseline, config.projection_side,
                              config.louvain_use_weights, louvain_seed);
            report.rows[t].random_replicates[task.replicate - 1] = metrics;
        }
    };

    std::size_t workers = config.workers != 0
                              ? config.workers
                              : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, tasks.size());
    if (workers <= 1) {
        for (const Task& task : tasks) run_task(task);
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::string failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size() || failed.load()) return;
                    try {
                        run_task(tasks[i]);
                    } catch (const std::exception& e) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        failed.store(true);
                        if (failure.empty()) failure = e.what();
                        return;
                    }
                }
            });
        }
        for (std::thread& th : pool) th.join();
        if (failed.load()) {
            throw Error(ErrorCategory::computation,
                        "sweep worker failed: " + failure);
        }
    }

    for (SweepRow& row : report.rows) {
        Aggregate users = aggregate_over(
            row.random_replicates, [](const SweepMetrics& s) {
                return std::optional<double>(
                    static_cast<double>(s.users_remaining));
            });
        row.random_users_mean = users.mean;
        row.random_users_std = users.std_dev;
        Aggregate density = aggregate_over(
            row.random_replicates,
            [](const SweepMetrics& s) { return s.projected_density; });
        if (density.count > 0) {
            row.random_density_mean = density.mean;
            row.random_density_std = density.std_dev;
        }
        Aggregate mod = aggregate_over(
            row.random_replicates,
            [](const SweepMetrics& s) { return s.modularity; });
        if (mod.count > 0) {
            row.random_modularity_mean = mod.mean;
            row.random_modularity_std = mod.std_dev;
        }
    }
    return report;
}

PlantedGraph make_planted_bipartite(const PlantedConfig& config,
                                    std::uint64_t seed) {
    if (config.blocks < 1 || config.users_per_block < 1 ||
        config.objects_per_block < 1) {
        throw InvalidArgumentError("planted graph needs at least one of each");
    }
    if (config.min_private_degree < 1 ||
        config.max_private_degree < config.min_private_degree ||
        config.min_weight < 1 || config.max_weight < config.min_weight) {
        throw InvalidArgumentError("bad planted degree or weight bounds");
    }

    SplitMix64 rng(seed);
    BipartiteGraph::Builder builder;
    std::vector<std::uint32_t> truth;
    const std::uint32_t private_cap =
        std::min(config.max_private_degree, config.objects_per_block);

    for (std::uint32_t b = 0; b < config.blocks; ++b) {
        for (std::uint32_t u = 0; u < config.users_per_block; ++u) {
            std::string user_key =
                "b" + std::to_string(b) + "_u" + std::to_string(u);
            truth.push_back(b);

            auto d = static_cast<std::uint32_t>(rng.next_int(
                std::min(config.min_private_degree, private_cap),
                private_cap));
            auto picks = sample_without_replacement(config.objects_per_block,
                                                    d, rng);
            for (std::uint32_t p : picks) {
                double w = static_cast<double>(
                    rng.next_int(config.min_weight, config.max_weight));
                builder.add(user_key,
                            "b" + std::to_string(b) + "_o" + std::to_string(p),
                            w);
            }
            for (std::uint32_t p = 0; p < config.popular_objects; ++p) {
                double w = static_cast<double>(
                    rng.next_int(config.min_weight, config.max_weight));
                builder.add(user_key, "pop_" + std::to_string(p), w);
            }
        }
    }

    PlantedGraph out{std::move(builder).build(), Partition{}};
    out.truth.community = std::move(truth);
    out.truth.community_count = config.blocks;
    return out;
}

namespace {

std::string opt_to_csv(const std::optional<double>& v) {
    return v ? std::to_string(*v) : "nan";
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& lines) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write file: " + path);
    }
    out << header << "\n";
    for (const std::string& line : lines) out << line << "\n";
}

}  // namespace

void write_sweep_csvs(const SweepReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::string header = "tau,metric,real,random_mean,random_std";
    std::vector<std::string> fig4, fig5, fig6;
    for (const SweepRow& row : report.rows) {
        std::string tau = std::to_string(row.tau);
        // Edge removal parity is by construction; the random columns echo
        // the real ratio.
        fig4.push_back(tau + ",edges_removed_ratio," +
                       std::to_string(row.edges_removed_ratio) + "," +
                       std::to_string(row.edges_removed_ratio) + ",0");
        fig4.push_back(
            tau + ",users_remaining," +
            std::to_string(row.real.users_remaining) + "," +
            std::to_string(row.random_users_mean) + "," +
            std::to_string(row.random_users_std));
        fig5.push_back(tau + ",projected_density," +
                       opt_to_csv(row.real.projected_density) + "," +
                       opt_to_csv(row.random_density_mean) + "," +
                       opt_to_csv(row.random_density_std));
        fig6.push_back(tau + ",modularity," +
                       opt_to_csv(row.real.modularity) + "," +
                       opt_to_csv(row.random_modularity_mean) + "," +
                       opt_to_csv(row.random_modularity_std));
    }
    write_csv(dir + "/fig4_edges_users.csv", header, fig4);
    write_csv(dir + "/fig5_density.csv", header, fig5);
    write_csv(dir + "/fig6_modularity.csv", header, fig6);
}

std::string sweep_report_json(const SweepReport& report) {
    nlohmann::json j;
    j["version"] = report.version;
    j["rng_algorithm"] = report.rng_algorithm;
    j["kernel_isa"] = report.kernel_isa;
    j["config"] = {
        {"thresholds", report.config.thresholds},
        {"replicates", report.config.replicates},
        {"master_seed", report.config.master_seed},
        {"projection_side", side_name(report.config.projection_side)},
        {"louvain_use_weights", report.config.louvain_use_weights},
        {"tfidf_log_base", report.config.tfidf_log_base},
    };
    char hash_hex[32];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(report.input_hash));
    j["input"] = {
        {"users", report.input_users},
        {"objects", report.input_objects},
        {"edges", report.input_edges},
        {"hash_fnv1a64", hash_hex},
    };
    auto metrics_json = [](const SweepMetrics& s) {
        nlohmann::json m;
        m["users_remaining"] = s.users_remaining;
        m["objects_remaining"] = s.objects_remaining;
        m["projected_density"] =
            s.projected_density ? nlohmann::json(*s.projected_density)
                                : nlohmann::json();
        m["modularity"] = s.modularity ? nlohmann::json(*s.modularity)
                                       : nlohmann::json();
        m["community_count"] =
            s.community_count ? nlohmann::json(*s.community_count)
                              : nlohmann::json();
        return m;
    };
    j["rows"] = nlohmann::json::array();
    for (const SweepRow& row : report.rows) {
        nlohmann::json r;
        r["tau"] = row.tau;
        r["edges_removed"] = row.edges_removed;
        r["edges_removed_ratio"] = row.edges_removed_ratio;
        r["real"] = metrics_json(row.real);
        r["random_users_mean"] = row.random_users_mean;
        r["random_users_std"] = row.random_users_std;
        r["random_density_mean"] =
            row.random_density_mean ? nlohmann::json(*row.random_density_mean)
                                    : nlohmann::json();
        r["random_density_std"] =
            row.random_density_std ? nlohmann::json(*row.random_density_std)
                                   : nlohmann::json();
        r["random_modularity_mean"] = row.random_modularity_mean
                                          ? nlohmann::json(
                                                *row.random_modularity_mean)
                                          : nlohmann::json();
        r["random_modularity_std"] =
            row.random_modularity_std
                ? nlohmann::json(*row.random_modularity_std)
                : nlohmann::json();
        r["replicates"] = nlohmann::json::array();
        for (const SweepMetrics& s : row.random_replicates) {
            r["replicates"].push_back(metrics_json(s));
        }
        j["rows"].push_back(std::move(r));
    }
    return j.dump(2);
}

}  // namespace ubnet
