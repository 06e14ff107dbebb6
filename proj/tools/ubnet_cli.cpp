// ubnet: analysis CLI for bipartite user-object networks. Subcommands
// cover the pipeline stages (stats, tfidf, filter, project, communities)
// plus degree-distribution fitting and the threshold-sweep experiment;
// stages compose through plain delimited-text dumps.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ubnet/bipartite_graph.hpp"
#include "ubnet/community.hpp"
#include "ubnet/distfit.hpp"
#include "ubnet/error.hpp"
#include "ubnet/experiment.hpp"
#include "ubnet/ingest.hpp"
#include "ubnet/projection.hpp"
#include "ubnet/rng.hpp"
#include "ubnet/tfidf.hpp"
#include "ubnet/version.hpp"

namespace {

using namespace ubnet;

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel g_log_level = LogLevel::info;

void log_info(const std::string& msg) {
    if (g_log_level >= LogLevel::info) std::cerr << msg << "\n";
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Shared per-subcommand input options.
struct InputOptions {
    std::string input;
    std::string builtin;
    std::string delimiter = "tab";
    bool has_header = false;
    std::optional<double> min_rating;
    std::optional<std::size_t> weight_column;

    char delimiter_char() const {
        if (delimiter == "tab" || delimiter == "\\t") return '\t';
        if (delimiter.size() != 1) {
            throw InvalidArgumentError("delimiter must be one character");
        }
        return delimiter[0];
    }

    IngestOptions ingest() const {
        IngestOptions opts;
        opts.delimiter = delimiter_char();
        opts.has_header = has_header;
        opts.min_rating = min_rating;
        opts.weight_column = weight_column;
        return opts;
    }
};

void add_input_options(CLI::App* cmd, InputOptions& in,
                       bool builtin_allowed = true) {
    auto* input = cmd->add_option("-i,--input", in.input,
                                  "Input edge-list file");
    if (builtin_allowed) {
        auto* builtin =
            cmd->add_option("--builtin", in.builtin,
                            "Built-in dataset (southern-women)")
                ->check(CLI::IsMember({"southern-women"}));
        input->excludes(builtin);
        builtin->excludes(input);
    }
    cmd->add_option("--delimiter", in.delimiter,
                    "Field delimiter (single char or 'tab')");
    cmd->add_flag("--header", in.has_header, "Skip one header line");
    cmd->add_option("--min-rating", in.min_rating,
                    "Keep only records with weight >= this value");
    cmd->add_option("--weight-column", in.weight_column,
                    "0-based column index holding the weight");
}

BipartiteGraph load_input(const InputOptions& in) {
    if (!in.builtin.empty()) {
        return southern_women();
    }
    if (in.input.empty()) {
        throw IoError("no input: pass --input <file> or --builtin");
    }
    LoadSummary summary;
    BipartiteGraph g = load_edge_list(in.input, in.ingest(), &summary);
    log_info("loaded " + std::to_string(summary.rows_read) + " rows: " +
             std::to_string(summary.users) + " users, " +
             std::to_string(summary.objects) + " objects, " +
             std::to_string(summary.edges) + " edges (" +
             std::to_string(summary.duplicates_merged) + " duplicates merged, " +
             std::to_string(summary.rows_dropped_rating) +
             " below min rating, " +
             std::to_string(summary.rows_dropped_zero_weight) + " zero weight)");
    return g;
}

// Output stream selection: path or stdout for "-".
class OutputFile {
public:
    explicit OutputFile(const std::string& path) : path_(path) {
        if (path_ != "-") {
            file_.open(path_);
            if (!file_) {
                throw IoError("cannot write file: " + path_);
            }
        }
    }
    std::ostream& stream() { return path_ == "-" ? std::cout : file_; }

private:
    std::string path_;
    std::ofstream file_;
};

void dump_bipartite(std::ostream& out, const BipartiteGraph& g) {
    for (const Edge& e : g.edges()) {
        out << g.user_key(e.user) << '\t' << g.object_key(e.object) << '\t'
            << fmt_double(e.weight) << '\n';
    }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    std::random_device rd;
    std::uint64_t s =
        (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << s << "\n";  // reproducibility by default
    return s;
}

Side parse_side(const std::string& side) {
    if (side == "users") return Side::users;
    if (side == "objects") return Side::objects;
    throw InvalidArgumentError("side must be 'users' or 'objects'");
}

double parse_log_base(const std::string& base) {
    if (base == "e") return M_E;
    try {
        return std::stod(base);
    } catch (const std::exception&) {
        throw InvalidArgumentError("bad log base: " + base);
    }
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int cmd_stats(const InputOptions& in, bool projected,
              const std::string& output) {
    BipartiteGraph g = load_input(in);
    OutputFile out(output);
    auto [ku, ko] = g.average_degrees();
    double d = g.density();
    out.stream() << "users\t" << g.user_count() << "\n"
                 << "objects\t" << g.object_count() << "\n"
                 << "edges\t" << g.edge_count() << "\n"
                 << "avg_user_degree\t" << fmt_short(ku) << "\n"
                 << "avg_object_degree\t" << fmt_short(ko) << "\n"
                 << "density\t" << fmt_short(d) << "\t" << fmt_short(d * 100.0)
                 << "%\n";
    if (projected) {
        ProjectedGraph gu = project(g, Side::users);
        ProjectedGraph go = project(g, Side::objects);
        out.stream() << "projected_user_edges\t" << gu.edge_count() << "\n"
                     << "projected_object_edges\t" << go.edge_count() << "\n";
        if (gu.node_count() >= 2) {
            out.stream() << "projected_user_density\t"
                         << fmt_short(gu.density()) << "\t"
                         << fmt_short(gu.density() * 100.0) << "%\n";
        }
        if (go.node_count() >= 2) {
            out.stream() << "projected_object_density\t"
                         << fmt_short(go.density()) << "\t"
                         << fmt_short(go.density() * 100.0) << "%\n";
        }
    }
    return 0;
}

int cmd_top_objects(const InputOptions& in, std::size_t k,
                    const std::string& output) {
    BipartiteGraph g = load_input(in);
    OutputFile out(output);
    for (const auto& t : g.top_objects(k)) {
        out.stream() << t.key << '\t' << t.degree << '\t'
                     << fmt_short(t.user_fraction) << '\n';
    }
    return 0;
}

int cmd_tfidf(const InputOptions& in, const std::string& log_base,
              const std::string& output, const std::string& audit_path) {
    BipartiteGraph g = load_input(in);
    TfidfOptions opts{parse_log_base(log_base)};
    TfidfWeights w = compute_tfidf(g, opts);
    BipartiteGraph reweighted = g.with_weights(w.edge_w_new);
    OutputFile out(output);
    dump_bipartite(out.stream(), reweighted);
    if (!audit_path.empty()) {
        OutputFile audit(audit_path);
        audit.stream() << "user\tobject\tw_old\tf\tidf\tw_new\n";
        auto edges = g.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            audit.stream() << g.user_key(edges[e].user) << '\t'
                           << g.object_key(edges[e].object) << '\t'
                           << fmt_double(edges[e].weight) << '\t'
                           << fmt_double(w.edge_f[e]) << '\t'
                           << fmt_double(w.object_idf[edges[e].object]) << '\t'
                           << fmt_double(w.edge_w_new[e]) << '\n';
        }
    }
    return 0;
}

int cmd_filter(const InputOptions& in, double tau, const std::string& output) {
    BipartiteGraph g = load_input(in);
    FilterReport report;
    BipartiteGraph filtered = filter_by_threshold(g, tau, &report);
    OutputFile out(output);
    dump_bipartite(out.stream(), filtered);
    log_info("filter tau=" + fmt_short(tau) + ": removed " +
             std::to_string(report.edges_removed) + " edges, " +
             std::to_string(report.users_remaining) + " users and " +
             std::to_string(report.objects_remaining) +
             " objects remaining" +
             (report.empty_result ? " (empty result)" : ""));
    return 0;
}

int cmd_project(const InputOptions& in, const std::string& side,
                const std::string& method, const std::string& output) {
    BipartiteGraph g = load_input(in);
    ProjectionMethod pm = ProjectionMethod::automatic;
    if (method == "pairs") pm = ProjectionMethod::pair_accumulation;
    else if (method == "bitset") pm = ProjectionMethod::bitset;
    ProjectedGraph p = project(g, parse_side(side), pm);
    OutputFile out(output);
    for (const ProjectedEdge& e : p.edges()) {
        out.stream() << p.node_key(e.a) << '\t' << p.node_key(e.b) << '\t'
                     << fmt_double(e.weight) << '\n';
    }
    log_info("projection: " + std::to_string(p.node_count()) + " nodes, " +
             std::to_string(p.edge_count()) + " edges");
    return 0;
}

int cmd_communities(const InputOptions& in,
                    const std::optional<std::uint64_t>& seed, bool unweighted,
                    const std::string& output) {
    if (in.input.empty()) {
        throw IoError("communities reads a one-mode edge list: --input <file>");
    }
    ProjectedGraph g = load_one_mode_edge_list(in.input, in.ingest());
    LouvainResult r =
        louvain(g, resolve_seed(seed), LouvainOptions{!unweighted, 1e-7});
    OutputFile out(output);
    for (std::uint32_t n = 0; n < g.node_count(); ++n) {
        out.stream() << g.node_key(n) << '\t' << r.partition.community[n]
                     << '\n';
    }
    log_info("communities: " + std::to_string(r.partition.community_count) +
             ", modularity " + fmt_short(r.modularity) + ", levels " +
             std::to_string(r.levels));
    return 0;
}

int cmd_fit_degrees(const InputOptions& in, const std::string& side,
                    bool as_json, double significance,
                    const std::string& output) {
    BipartiteGraph g = load_input(in);
    auto degrees = g.degree_sequence(parse_side(side));
    FitOptions opts;
    opts.significance = significance;
    FitResult fit = best_fit(degrees, opts);
    OutputFile out(output);

    auto params_text = [](const CandidateModel& m) {
        std::ostringstream s;
        switch (m.kind) {
            case ModelKind::exponential:
                s << "lambda=" << fmt_short(m.lambda);
                break;
            case ModelKind::powerlaw:
                s << "alpha=" << fmt_short(m.alpha) << " x_min=" << m.x_min;
                break;
            case ModelKind::lognormal:
                s << "mu=" << fmt_short(m.mu)
                  << " sigma=" << fmt_short(m.sigma);
                break;
            case ModelKind::stretched_exponential:
                s << "lambda=" << fmt_short(m.lambda)
                  << " beta=" << fmt_short(m.beta);
                break;
        }
        return s.str();
    };

    if (as_json) {
        nlohmann::json j;
        j["side"] = side;
        j["n"] = degrees.size();
        j["models"] = nlohmann::json::array();
        for (const CandidateModel& m : fit.models) {
            nlohmann::json mj;
            mj["kind"] = model_name(m.kind);
            mj["lambda"] = m.lambda;
            mj["alpha"] = m.alpha;
            mj["mu"] = m.mu;
            mj["sigma"] = m.sigma;
            mj["beta"] = m.beta;
            mj["x_min"] = m.x_min;
            mj["loglikelihood"] = m.loglikelihood;
            mj["n_tail"] = m.n_tail;
            j["models"].push_back(std::move(mj));
        }
        j["comparisons"] = nlohmann::json::array();
        for (const ModelComparison& c : fit.comparisons) {
            j["comparisons"].push_back({{"a", model_name(c.a)},
                                        {"b", model_name(c.b)},
                                        {"r", c.r},
                                        {"p", c.p},
                                        {"n", c.n},
                                        {"support_min", c.support_min}});
        }
        j["best"] = model_name(fit.best);
        j["inconclusive"] = fit.inconclusive;
        out.stream() << j.dump(2) << "\n";
        return 0;
    }

    out.stream() << "model\tparams\tloglik\tn_tail\n";
    for (const CandidateModel& m : fit.models) {
        out.stream() << model_name(m.kind) << '\t' << params_text(m) << '\t'
                     << fmt_short(m.loglikelihood) << '\t' << m.n_tail << '\n';
    }
    out.stream() << "\ncomparison\tR\tp\tn\n";
    for (const ModelComparison& c : fit.comparisons) {
        out.stream() << model_name(c.a) << " vs " << model_name(c.b) << '\t'
                     << fmt_short(c.r) << '\t' << fmt_short(c.p) << '\t'
                     << c.n << '\n';
    }
    out.stream() << "\nbest\t" << model_name(fit.best)
                 << (fit.inconclusive ? "\t(inconclusive)" : "") << "\n";
    return 0;
}

SweepConfig parse_sweep_config(const std::string& path, bool* seed_seen) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    SweepConfig config;
    std::string line;
    std::size_t line_no = 0;
    std::optional<double> max_threshold;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line.substr(0, line.find('#'));
        auto eq = trimmed.find('=');
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string()
                                          : s.substr(b, e - b + 1);
        };
        if (strip(trimmed).empty()) continue;
        if (eq == std::string::npos) {
            throw ParseError(line_no, "expected key = value");
        }
        std::string key = strip(trimmed.substr(0, eq));
        std::string value = strip(trimmed.substr(eq + 1));
        try {
            if (key == "thresholds") {
                config.thresholds.clear();
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    config.thresholds.push_back(std::stod(strip(item)));
                }
            } else if (key == "max_threshold") {
                max_threshold = std::stod(value);
            } else if (key == "replicates") {
                config.replicates = std::stoull(value);
            } else if (key == "master_seed") {
                config.master_seed = std::stoull(value);
                if (seed_seen) *seed_seen = true;
            } else if (key == "projection_side") {
                config.projection_side = parse_side(value);
            } else if (key == "louvain_use_weights") {
                config.louvain_use_weights = value == "true" || value == "1";
            } else if (key == "tfidf_log_base") {
                config.tfidf_log_base = parse_log_base(value);
            } else if (key == "workers") {
                config.workers = std::stoull(value);
            } else {
                throw ParseError(line_no, "unknown config key: " + key);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError(line_no, "bad value for " + key);
        }
    }
    if (max_threshold) {
        config.thresholds = SweepConfig::default_thresholds(*max_threshold);
    }
    return config;
}

int cmd_experiment(const InputOptions& in, const std::string& config_path,
                   const std::optional<std::uint64_t>& seed,
                   const std::string& output_dir) {
    BipartiteGraph g = load_input(in);
    bool config_has_seed = false;
    SweepConfig config =
        config_path.empty()
            ? SweepConfig{}
            : parse_sweep_config(config_path, &config_has_seed);
    if (seed) {
        config.master_seed = *seed;
    } else if (!config_has_seed) {
        config.master_seed = resolve_seed(std::nullopt);
    }
    SweepReport report = run_sweep(g, config);
    write_sweep_csvs(report, output_dir);
    std::ofstream json_out(output_dir + "/report.json");
    if (!json_out) {
        throw IoError("cannot write report.json in " + output_dir);
    }
    json_out << sweep_report_json(report) << "\n";
    log_info("experiment: " + std::to_string(report.rows.size()) +
             " thresholds x " + std::to_string(config.replicates) +
             " replicates -> " + output_dir);
    return 0;
}

int cmd_southern_women(const std::optional<std::uint64_t>& seed, double tau,
                       const std::string& output) {
    BipartiteGraph women = southern_women();
    BipartiteGraph reweighted = tfidf_reweight(women);
    BipartiteGraph filtered = filter_by_threshold(reweighted, tau);
    ProjectedGraph proj = project(filtered, Side::users);
    LouvainResult r = louvain(proj, seed.value_or(1));

    // Gather groups, order them by their smallest member, list members
    // numerically, and report the pruned women.
    std::vector<std::vector<int>> groups(r.partition.community_count);
    for (std::uint32_t n = 0; n < proj.node_count(); ++n) {
        groups[r.partition.community[n]].push_back(
            std::stoi(proj.node_key(n)));
    }
    for (auto& g : groups) std::sort(g.begin(), g.end());
    std::sort(groups.begin(), groups.end());

    OutputFile out(output);
    for (std::size_t i = 0; i < groups.size(); ++i) {
        out.stream() << "group " << (i + 1) << ":";
        for (int w : groups[i]) out.stream() << ' ' << w;
        out.stream() << "\n";
    }
    std::vector<int> pruned;
    for (std::uint32_t w = 1; w <= 18; ++w) {
        if (!filtered.find_user(std::to_string(w))) {
            pruned.push_back(static_cast<int>(w));
        }
    }
    out.stream() << "pruned:";
    for (int w : pruned) out.stream() << ' ' << w;
    out.stream() << "\n";
    log_info("southern-women: tau=" + fmt_short(tau) + ", modularity " +
             fmt_short(r.modularity));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ubnet: bipartite user-object network analysis"};
    app.set_version_flag("--version", std::string("ubnet ") + kVersion);
    app.require_subcommand(1);

    std::string log_level = "info";
    if (const char* env = std::getenv("UBNET_LOG_LEVEL")) log_level = env;
    app.add_option("--log-level", log_level, "error, info, or debug")
        ->check(CLI::IsMember({"error", "info", "debug"}));

    // stats
    InputOptions stats_in;
    bool stats_projected = false;
    std::string stats_output = "-";
    auto* stats = app.add_subcommand("stats", "Basic network statistics");
    add_input_options(stats, stats_in);
    stats->add_flag("--projected", stats_projected,
                    "Include one-mode projection sizes and densities");
    stats->add_option("-o,--output", stats_output, "Output path ('-' stdout)");

    // top-objects
    InputOptions top_in;
    std::size_t top_k = 10;
    std::string top_output = "-";
    auto* top = app.add_subcommand("top-objects", "Highest-degree objects");
    add_input_options(top, top_in);
    top->add_option("-k,--k", top_k, "Number of objects")->check(CLI::PositiveNumber);
    top->add_option("-o,--output", top_output, "Output path ('-' stdout)");

    // fit-degrees
    InputOptions fit_in;
    std::string fit_side = "users";
    bool fit_json = false;
    double fit_significance = 0.1;
    std::string fit_output = "-";
    auto* fit = app.add_subcommand("fit-degrees",
                                   "Fit degree-distribution models");
    add_input_options(fit, fit_in);
    fit->add_option("--side", fit_side, "users or objects")
        ->check(CLI::IsMember({"users", "objects"}));
    fit->add_flag("--json", fit_json, "JSON report");
    fit->add_option("--significance", fit_significance,
                    "p-value level for decisive comparisons");
    fit->add_option("-o,--output", fit_output, "Output path ('-' stdout)");

    // tfidf
    InputOptions tfidf_in;
    std::string tfidf_log_base = "2";
    std::string tfidf_output = "-";
    std::string tfidf_audit;
    auto* tfidf_cmd = app.add_subcommand("tfidf", "Reweight edges with tf-idf");
    add_input_options(tfidf_cmd, tfidf_in);
    tfidf_cmd->add_option("--log-base", tfidf_log_base,
                          "idf logarithm base (number or 'e')");
    tfidf_cmd->add_option("-o,--output", tfidf_output,
                          "Reweighted edge list ('-' stdout)");
    tfidf_cmd->add_option("--audit", tfidf_audit,
                          "Write per-edge (u, o, w_old, f, idf, w_new) dump");

    // filter
    InputOptions filter_in;
    double filter_tau = 0.0;
    std::string filter_output = "-";
    auto* filter =
        app.add_subcommand("filter", "Drop edges below a weight threshold");
    add_input_options(filter, filter_in);
    filter->add_option("--tau", filter_tau, "Threshold")->required();
    filter->add_option("-o,--output", filter_output, "Output path ('-' stdout)");

    // project
    InputOptions project_in;
    std::string project_side = "users";
    std::string project_method = "auto";
    std::string project_output = "-";
    auto* project_cmd =
        app.add_subcommand("project", "One-mode projection edge list");
    add_input_options(project_cmd, project_in);
    project_cmd->add_option("--side", project_side, "users or objects")
        ->check(CLI::IsMember({"users", "objects"}));
    project_cmd->add_option("--method", project_method,
                            "auto, pairs, or bitset")
        ->check(CLI::IsMember({"auto", "pairs", "bitset"}));
    project_cmd->add_option("-o,--output", project_output,
                            "Output path ('-' stdout)");

    // communities
    InputOptions comm_in;
    std::optional<std::uint64_t> comm_seed;
    bool comm_unweighted = false;
    std::string comm_output = "-";
    auto* comm = app.add_subcommand(
        "communities", "Louvain communities of a one-mode edge list");
    add_input_options(comm, comm_in, /*builtin_allowed=*/false);
    comm->add_option("--seed", comm_seed, "RNG seed (printed when omitted)");
    comm->add_flag("--unweighted", comm_unweighted,
                   "Ignore edge weights during optimization");
    comm->add_option("-o,--output", comm_output, "Output path ('-' stdout)");

    // experiment
    InputOptions exp_in;
    std::string exp_config;
    std::optional<std::uint64_t> exp_seed;
    std::string exp_output_dir = "sweep_out";
    auto* exp = app.add_subcommand(
        "experiment", "Threshold sweep with random baselines");
    add_input_options(exp, exp_in);
    exp->add_option("--config", exp_config, "key = value config file");
    exp->add_option("--seed", exp_seed, "Master seed (overrides config)");
    exp->add_option("--output-dir", exp_output_dir,
                    "Directory for CSVs and report.json");

    // southern-women
    std::optional<std::uint64_t> sw_seed;
    double sw_tau = 1.0;
    std::string sw_output = "-";
    auto* sw = app.add_subcommand(
        "southern-women",
        "Full pipeline on the built-in fixture: tfidf, filter, project, "
        "communities");
    sw->add_option("--seed", sw_seed, "Louvain seed (default 1)");
    sw->add_option("--tau", sw_tau, "Filter threshold (default 1)");
    sw->add_option("-o,--output", sw_output, "Output path ('-' stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 uses per-error exit codes; collapse every usage problem
        // to 1 (0 stays 0 for --help / --version).
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    g_log_level = log_level == "error"
                      ? LogLevel::error
                      : (log_level == "debug" ? LogLevel::debug
                                              : LogLevel::info);

    try {
        if (app.got_subcommand(stats)) {
            return cmd_stats(stats_in, stats_projected, stats_output);
        }
        if (app.got_subcommand(top)) {
            return cmd_top_objects(top_in, top_k, top_output);
        }
        if (app.got_subcommand(fit)) {
            return cmd_fit_degrees(fit_in, fit_side, fit_json,
                                   fit_significance, fit_output);
        }
        if (app.got_subcommand(tfidf_cmd)) {
            return cmd_tfidf(tfidf_in, tfidf_log_base, tfidf_output,
                             tfidf_audit);
        }
        if (app.got_subcommand(filter)) {
            return cmd_filter(filter_in, filter_tau, filter_output);
        }
        if (app.got_subcommand(project_cmd)) {
            return cmd_project(project_in, project_side, project_method,
                               project_output);
        }
        if (app.got_subcommand(comm)) {
            return cmd_communities(comm_in, comm_seed, comm_unweighted,
                                   comm_output);
        }
        if (app.got_subcommand(exp)) {
            return cmd_experiment(exp_in, exp_config, exp_seed,
                                  exp_output_dir);
        }
        if (app.got_subcommand(sw)) {
            return cmd_southern_women(sw_seed, sw_tau, sw_output);
        }
    } catch (const Error& e) {
        std::cerr << "ubnet: error category=" << category_name(e.category())
                  << ": " << e.what() << "\n";
        return category_exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "ubnet: error category=computation: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
