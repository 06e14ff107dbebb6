#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "support/oracles.hpp"
#include "ubnet/error.hpp"
#include "ubnet/experiment.hpp"
#include "ubnet/projection.hpp"
#include "ubnet/tfidf.hpp"

using namespace ubnet;
using ubnet::testing::random_bipartite;

namespace {

SweepConfig tiny_config() {
    SweepConfig config;
    config.thresholds = {0.1, 0.5, 1.0, 2.0};
    config.replicates = 3;
    config.master_seed = 4242;
    config.workers = 2;
    return config;
}

}  // namespace

TEST_CASE("random baseline edge removal") {
    SplitMix64 rng(31);
    BipartiteGraph g = random_bipartite(rng, 10, 10, 0.4);
    const std::size_t m = g.edge_count();

    SUBCASE("removing zero edges is the identity") {
        BipartiteGraph b = random_baseline(g, 0, 99);
        CHECK(b.edge_count() == m);
        CHECK(b.user_count() == g.user_count());
        CHECK(graph_content_hash(b) == graph_content_hash(g));
    }
    SUBCASE("removing everything empties the graph") {
        BipartiteGraph b = random_baseline(g, m, 99);
        CHECK(b.edge_count() == 0);
        CHECK(b.user_count() == 0);
        CHECK(b.object_count() == 0);
    }
    SUBCASE("fixed seed reproduces the same graph") {
        BipartiteGraph b1 = random_baseline(g, m / 2, 1234);
        BipartiteGraph b2 = random_baseline(g, m / 2, 1234);
        CHECK(graph_content_hash(b1) == graph_content_hash(b2));
        BipartiteGraph b3 = random_baseline(g, m / 2, 1235);
        CHECK(b1.edge_count() == b3.edge_count());
    }
    SUBCASE("exact removal count and node pruning") {
        BipartiteGraph b = random_baseline(g, m / 3, 7);
        CHECK(b.edge_count() == m - m / 3);
        for (std::uint32_t u = 0; u < b.user_count(); ++u) {
            CHECK(b.user_degree(u) > 0);
        }
        for (std::uint32_t o = 0; o < b.object_count(); ++o) {
            CHECK(b.object_degree(o) > 0);
        }
    }
    SUBCASE("out-of-range count is rejected") {
        CHECK_THROWS_AS(random_baseline(g, m + 1, 0), InvalidArgumentError);
    }
}

TEST_CASE("planted bipartite structure") {
    PlantedConfig cfg;
    cfg.blocks = 2;
    cfg.users_per_block = 12;
    cfg.objects_per_block = 10;
    cfg.min_private_degree = 3;
    cfg.max_private_degree = 6;

    SUBCASE("no popular objects: blocks are disconnected in projection") {
        cfg.popular_objects = 0;
        PlantedGraph pg = make_planted_bipartite(cfg, 5);
        CHECK(pg.graph.user_count() == 24);
        ProjectedGraph p = project(pg.graph, Side::users);
        for (const ProjectedEdge& e : p.edges()) {
            CHECK(pg.truth.community[e.a] == pg.truth.community[e.b]);
        }
    }
    SUBCASE("popular objects connect every user") {
        cfg.popular_objects = 2;
        PlantedGraph pg = make_planted_bipartite(cfg, 5);
        auto pop = pg.graph.find_object("pop_0");
        REQUIRE(pop.has_value());
        CHECK(pg.graph.object_degree(*pop) == pg.graph.user_count());
        // shared objects produce cross-block projected edges
        ProjectedGraph p = project(pg.graph, Side::users);
        bool cross = false;
        for (const ProjectedEdge& e : p.edges()) {
            cross |= pg.truth.community[e.a] != pg.truth.community[e.b];
        }
        CHECK(cross);
        CHECK(p.density() == doctest::Approx(1.0));  // popular objects clique
    }
    SUBCASE("deterministic per seed") {
        PlantedGraph a = make_planted_bipartite(cfg, 12);
        PlantedGraph b = make_planted_bipartite(cfg, 12);
        CHECK(graph_content_hash(a.graph) == graph_content_hash(b.graph));
    }
}

TEST_CASE("sweep config validation") {
    SweepConfig config;
    config.thresholds = {1.0, 0.5};
    CHECK_THROWS_AS(config.validate(), InvalidArgumentError);
    config.thresholds = {0.5, 1.0};
    config.replicates = 0;
    CHECK_THROWS_AS(config.validate(), InvalidArgumentError);
    config.replicates = 1;
    CHECK_NOTHROW(config.validate());

    auto taus = SweepConfig::default_thresholds();
    REQUIRE(taus.size() == 13);
    CHECK(taus.front() == doctest::Approx(0.1));
    CHECK(taus[1] == doctest::Approx(0.5));
    CHECK(taus.back() == doctest::Approx(6.0));
    auto capped = SweepConfig::default_thresholds(2.5);
    CHECK(capped.back() == doctest::Approx(2.5));
}

TEST_CASE("run_sweep on the planted synthetic") {
    PlantedConfig pcfg;
    pcfg.users_per_block = 16;
    pcfg.objects_per_block = 12;
    pcfg.min_private_degree = 4;
    pcfg.max_private_degree = 8;
    PlantedGraph pg = make_planted_bipartite(pcfg, 9);
    SweepConfig config = tiny_config();
    SweepReport report = run_sweep(pg.graph, config);

    REQUIRE(report.rows.size() == config.thresholds.size());
    CHECK(report.rng_algorithm == "splitmix64");
    CHECK(report.input_users == pg.graph.user_count());
    CHECK(report.input_hash == graph_content_hash(pg.graph));

    double prev_ratio = -1.0;
    for (const SweepRow& row : report.rows) {
        CHECK(row.edges_removed_ratio >= prev_ratio);  // monotone in tau
        prev_ratio = row.edges_removed_ratio;
        CHECK(row.edges_removed_ratio >= 0.0);
        CHECK(row.edges_removed_ratio <= 1.0);
        CHECK(row.random_replicates.size() == config.replicates);
    }

    SUBCASE("deterministic: identical config gives identical reports") {
        SweepReport again = run_sweep(pg.graph, config);
        CHECK(sweep_report_json(again) == sweep_report_json(report));
        SweepConfig serial = config;
        serial.workers = 1;
        SweepReport one_thread = run_sweep(pg.graph, serial);
        CHECK(sweep_report_json(one_thread) == sweep_report_json(report));
    }
    SUBCASE("different master seed changes the baselines") {
        SweepConfig other = config;
        other.master_seed = 777;
        SweepReport report2 = run_sweep(pg.graph, other);
        CHECK(sweep_report_json(report2) != sweep_report_json(report));
    }
}

TEST_CASE("the pipeline recovers the planted blocks exactly") {
    PlantedConfig pcfg;
    pcfg.min_weight = 1;
    pcfg.max_weight = 2;
    PlantedGraph pg = make_planted_bipartite(pcfg, 660001);

    BipartiteGraph filtered =
        filter_by_threshold(tfidf_reweight(pg.graph), 1.0);
    REQUIRE(filtered.user_count() == pg.graph.user_count());
    ProjectedGraph proj = project(filtered, Side::users);
    LouvainResult lr = louvain(proj, 17);

    REQUIRE(lr.partition.community_count == 2);
    // keys are "b<block>_u<i>": every member of a community must share
    // the block prefix, and the two communities must differ
    std::string prefix0, prefix1;
    for (std::uint32_t n = 0; n < proj.node_count(); ++n) {
        std::string prefix = proj.node_key(n).substr(0, 2);
        std::string& expect =
            lr.partition.community[n] == 0 ? prefix0 : prefix1;
        if (expect.empty()) {
            expect = prefix;
        } else {
            CHECK(expect == prefix);
        }
    }
    CHECK(prefix0 != prefix1);

    // the found Q is within 0.02 of the planted partition's own Q
    Partition truth;
    for (std::uint32_t n = 0; n < proj.node_count(); ++n) {
        auto orig = pg.graph.find_user(proj.node_key(n));
        REQUIRE(orig.has_value());
        truth.community.push_back(pg.truth.community[*orig]);
    }
    truth.community_count = 2;
    double planted_q = modularity(proj, truth);
    CHECK(lr.modularity >= planted_q - 0.02);
}

TEST_CASE("a tau past the maximum weight records null metrics") {
    PlantedConfig pcfg;
    pcfg.users_per_block = 8;
    pcfg.objects_per_block = 8;
    pcfg.min_private_degree = 2;
    pcfg.max_private_degree = 4;
    PlantedGraph pg = make_planted_bipartite(pcfg, 1);
    SweepConfig config;
    config.thresholds = {0.5, 50.0};
    config.replicates = 2;
    config.master_seed = 3;
    SweepReport report = run_sweep(pg.graph, config);
    const SweepRow& last = report.rows.back();
    CHECK(last.edges_removed_ratio == doctest::Approx(1.0));
    CHECK(last.real.users_remaining == 0);
    CHECK(!last.real.projected_density.has_value());
    CHECK(!last.real.modularity.has_value());
}

TEST_CASE("csv and json outputs") {
    PlantedConfig pcfg;
    pcfg.users_per_block = 8;
    pcfg.objects_per_block = 8;
    pcfg.min_private_degree = 2;
    pcfg.max_private_degree = 4;
    PlantedGraph pg = make_planted_bipartite(pcfg, 2);
    SweepConfig config;
    config.thresholds = {0.5, 1.0};
    config.replicates = 2;
    SweepReport report = run_sweep(pg.graph, config);

    std::string dir = "sweep_test_out";
    write_sweep_csvs(report, dir);
    for (const char* name :
         {"fig4_edges_users.csv", "fig5_density.csv", "fig6_modularity.csv"}) {
        std::ifstream in(dir + "/" + name);
        REQUIRE(in.good());
        std::string header;
        std::getline(in, header);
        CHECK(header == "tau,metric,real,random_mean,random_std");
        std::size_t lines = 0;
        std::string line;
        while (std::getline(in, line)) ++lines;
        CHECK(lines >= report.rows.size());
    }
    std::string json = sweep_report_json(report);
    CHECK(json.find("\"rng_algorithm\": \"splitmix64\"") != std::string::npos);
    CHECK(json.find("\"hash_fnv1a64\"") != std::string::npos);
    std::filesystem::remove_all(dir);
}
