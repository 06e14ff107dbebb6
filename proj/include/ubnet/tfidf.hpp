#pragma once

#include <cstdint>
#include <vector>

#include "ubnet/bipartite_graph.hpp"

namespace ubnet {

// The idf logarithm base is configurable; 2 is the default because the
// threshold semantics of the filtering experiments were calibrated
// against base-2 weights. Any base > 1 works; use std::numbers::e for
// natural log.
struct TfidfOptions {
    double log_base = 2.0;
};

// Per-edge and per-node factors of the reweighting, kept alongside the
// reweighted graph for audit dumps. Arrays are aligned with
// graph.edges(), user indices, and object indices respectively.
struct TfidfWeights {
    std::vector<double> edge_f;      // w(u,o) / max weight incident to u
    std::vector<double> edge_w_new;  // edge_f * object_idf[object]
    std::vector<double> user_max_w;
    std::vector<double> object_idf;  // log(n_u / d(o)) in the chosen base
    double log_base = 2.0;
};

// w(u,o) normalized by the largest weight on any of u's edges; in (0, 1],
// and exactly 1 on every user's strongest edge. Missing edge ->
// NotFoundError.
double term_frequency(const BipartiteGraph& graph, std::uint32_t user,
                      std::uint32_t object);

// log(n_u / d(o)); zero exactly when the object touches every user.
double inverse_user_frequency(const BipartiteGraph& graph,
                              std::uint32_t object,
                              const TfidfOptions& options = {});

TfidfWeights compute_tfidf(const BipartiteGraph& graph,
                           const TfidfOptions& options = {});

// New graph with every edge weight replaced by f * idf. Structure is
// unchanged; weights may now be zero (edges into universal objects).
BipartiteGraph tfidf_reweight(const BipartiteGraph& graph,
                              const TfidfOptions& options = {});

struct FilterReport {
    double tau = 0.0;
    std::size_t edges_removed = 0;
    std::size_t users_remaining = 0;
    std::size_t objects_remaining = 0;
    bool empty_result = false;
};

// Drops edges with weight strictly below tau (boundary edges stay), then
// prunes nodes left isolated. A tau above the maximum weight yields an
// empty graph, which is allowed and flagged in the report.
BipartiteGraph filter_by_threshold(const BipartiteGraph& reweighted,
                                   double tau,
                                   FilterReport* report = nullptr);

}  // namespace ubnet
