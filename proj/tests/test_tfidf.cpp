#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "ubnet/error.hpp"
#include "ubnet/ingest.hpp"
#include "ubnet/tfidf.hpp"

using namespace ubnet;
using ubnet::testing::random_bipartite;
using ubnet::testing::toy_graph;

namespace {

const TfidfOptions kNatural{std::numbers::e};

}  // namespace

TEST_CASE("term frequency is the ratio to the user's max weight") {
    BipartiteGraph::Builder b;
    b.add("u", "hi", 4.0);
    b.add("u", "lo", 2.0);
    b.add("solo", "x", 7.5);
    BipartiteGraph g = std::move(b).build();
    auto u = *g.find_user("u");
    CHECK(term_frequency(g, u, *g.find_object("hi")) == doctest::Approx(1.0));
    CHECK(term_frequency(g, u, *g.find_object("lo")) == doctest::Approx(0.5));
    // single-edge user: its only edge is the max
    CHECK(term_frequency(g, *g.find_user("solo"), *g.find_object("x")) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(term_frequency(g, u, *g.find_object("x")), NotFoundError);
}

TEST_CASE("inverse user frequency") {
    // object connected to every user -> exactly zero, any base
    BipartiteGraph::Builder b;
    for (int i = 0; i < 6; ++i) b.add("u" + std::to_string(i), "all", 1.0);
    b.add("u0", "rare", 1.0);
    BipartiteGraph g = std::move(b).build();
    CHECK(inverse_user_frequency(g, *g.find_object("all")) ==
          doctest::Approx(0.0));
    CHECK(inverse_user_frequency(g, *g.find_object("all"), kNatural) ==
          doctest::Approx(0.0));

    // n_u = 5, d(o) = 1: ln 5 in natural mode, log2 5 at the default base
    BipartiteGraph toy = toy_graph();
    BipartiteGraph::Builder tb;
    // object "z" touched only by user 1 in a 5-user graph
    for (const Edge& e : toy.edges()) {
        tb.add(toy.user_key(e.user), toy.object_key(e.object), e.weight);
    }
    tb.add("1", "z", 1.0);
    BipartiteGraph g5 = std::move(tb).build();
    CHECK(inverse_user_frequency(g5, *g5.find_object("z"), kNatural) ==
          doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK(inverse_user_frequency(g5, *g5.find_object("z")) ==
          doctest::Approx(std::log2(5.0)).epsilon(1e-12));

    // the published top tag: n_u = 1892, d = 673
    CHECK(std::log(1892.0 / 673.0) == doctest::Approx(1.033).epsilon(0.001));
}

TEST_CASE("reweighting semantics") {
    BipartiteGraph::Builder b;
    // universal object plus a user with two edges in one degree class
    b.add("u1", "all", 4.0);
    b.add("u1", "o1", 4.0);
    b.add("u1", "o2", 2.0);
    b.add("u2", "all", 1.0);
    b.add("u2", "o1", 1.0);
    b.add("u3", "all", 2.0);
    b.add("u3", "o2", 2.0);
    BipartiteGraph g = std::move(b).build();
    TfidfWeights w = compute_tfidf(g);
    auto edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (g.object_key(edges[e].object) == "all") {
            CHECK(w.edge_w_new[e] == doctest::Approx(0.0));  // idf = 0
        }
    }
    // o1 and o2 both have degree 2: u1's weights 4 and 2 give a 2:1 ratio
    double w_o1 = 0.0, w_o2 = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].user == *g.find_user("u1")) {
            if (g.object_key(edges[e].object) == "o1") w_o1 = w.edge_w_new[e];
            if (g.object_key(edges[e].object) == "o2") w_o2 = w.edge_w_new[e];
        }
    }
    CHECK(w_o1 == doctest::Approx(2.0 * w_o2));
}

TEST_CASE("unweighted graphs reduce to pure idf") {
    BipartiteGraph g = southern_women();
    TfidfWeights w = compute_tfidf(g, kNatural);
    auto edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        CHECK(w.edge_f[e] == doctest::Approx(1.0));
        CHECK(w.edge_w_new[e] ==
              doctest::Approx(std::log(
                  18.0 / g.object_degree(edges[e].object))));
    }
}

TEST_CASE("randomized direct-evaluation oracle") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        BipartiteGraph g = random_bipartite(rng, 9, 9, 0.45);
        TfidfWeights w = compute_tfidf(g, kNatural);
        auto edges = g.edges();
        const double n_u = static_cast<double>(g.user_count());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            double max_w = 0.0;
            for (double uw : g.user_weights(edges[e].user)) {
                max_w = std::max(max_w, uw);
            }
            double expect = (edges[e].weight / max_w) *
                            std::log(n_u / g.object_degree(edges[e].object));
            CHECK(w.edge_w_new[e] == doctest::Approx(expect).epsilon(1e-12));
            CHECK(w.edge_w_new[e] >= 0.0);
            CHECK(w.edge_w_new[e] <= std::log(n_u) + 1e-12);
        }
        // every user has at least one f = 1 edge
        std::vector<bool> has_max(g.user_count(), false);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (w.edge_f[e] == doctest::Approx(1.0)) {
                has_max[edges[e].user] = true;
            }
        }
        for (bool h : has_max) CHECK(h);
    }
}

TEST_CASE("per-user rescaling leaves new weights unchanged") {
    SplitMix64 rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        BipartiteGraph g = random_bipartite(rng, 8, 8, 0.5);
        TfidfWeights base = compute_tfidf(g);

        // scale each user's weights by an arbitrary positive factor
        std::vector<double> scale(g.user_count());
        for (auto& s : scale) s = 0.1 + rng.next_double() * 9.9;
        std::vector<double> scaled;
        for (const Edge& e : g.edges()) {
            scaled.push_back(e.weight * scale[e.user]);
        }
        TfidfWeights after = compute_tfidf(g.with_weights(scaled));
        for (std::size_t e = 0; e < base.edge_w_new.size(); ++e) {
            CHECK(after.edge_w_new[e] ==
                  doctest::Approx(base.edge_w_new[e]).epsilon(1e-12));
        }
    }
}

TEST_CASE("unpopular objects weigh more at equal term frequency") {
    SplitMix64 rng(321);
    for (int trial = 0; trial < 30; ++trial) {
        BipartiteGraph g = random_bipartite(rng, 8, 8, 0.5);
        TfidfWeights w = compute_tfidf(g);
        auto edges = g.edges();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            for (std::size_t j = 0; j < edges.size(); ++j) {
                if (edges[i].user != edges[j].user) continue;
                if (w.edge_f[i] != w.edge_f[j]) continue;
                auto di = g.object_degree(edges[i].object);
                auto dj = g.object_degree(edges[j].object);
                if (di < dj) {
                    CHECK(w.edge_w_new[i] > w.edge_w_new[j]);
                }
            }
        }
    }
}

TEST_CASE("threshold filtering semantics") {
    BipartiteGraph g = tfidf_reweight(southern_women());

    SUBCASE("tau = 0 removes nothing, even zero-weight edges") {
        FilterReport report;
        BipartiteGraph f = filter_by_threshold(g, 0.0, &report);
        CHECK(report.edges_removed == 0);
        CHECK(f.edge_count() == g.edge_count());
        CHECK(f.user_count() == g.user_count());
    }

    SUBCASE("boundary edges are kept") {
        // event 21 (degree 6) has idf log2(3); a tau exactly at the
        // computed weight keeps the edge (strict removal)
        double tau = std::log(18.0 / 6.0) / std::log(2.0);
        BipartiteGraph f = filter_by_threshold(g, tau);
        CHECK(f.find_object("21").has_value());
    }

    SUBCASE("tau above the maximum empties the graph") {
        FilterReport report;
        BipartiteGraph f = filter_by_threshold(g, 1e9, &report);
        CHECK(f.edge_count() == 0);
        CHECK(f.user_count() == 0);
        CHECK(report.empty_result);
        CHECK(report.edges_removed == g.edge_count());
    }

    SUBCASE("bad tau is rejected") {
        CHECK_THROWS_AS(filter_by_threshold(g, -1.0), InvalidArgumentError);
    }
}

TEST_CASE("filtering is monotone in tau") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        BipartiteGraph g = tfidf_reweight(random_bipartite(rng, 10, 10, 0.4));
        double t1 = rng.next_double() * 2.0;
        double t2 = t1 + rng.next_double() * 2.0;
        FilterReport r1, r2;
        BipartiteGraph f1 = filter_by_threshold(g, t1, &r1);
        BipartiteGraph f2 = filter_by_threshold(g, t2, &r2);
        CHECK(r2.edges_removed >= r1.edges_removed);
        CHECK(f2.user_count() <= f1.user_count());
        CHECK(f2.object_count() <= f1.object_count());
        // edge subset by keys
        for (const Edge& e : f2.edges()) {
            auto u = f1.find_user(f2.user_key(e.user));
            auto o = f1.find_object(f2.object_key(e.object));
            REQUIRE(u.has_value());
            REQUIRE(o.has_value());
            CHECK(f1.edge_weight(*u, *o).has_value());
        }
    }
}
