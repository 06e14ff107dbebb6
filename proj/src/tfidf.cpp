#include "ubnet/tfidf.hpp"

#include <algorithm>
#include <cmath>

#include "ubnet/error.hpp"

namespace ubnet {

namespace {

void check_base(double base) {
    if (!std::isfinite(base) || base <= 1.0) {
        throw InvalidArgumentError("idf log base must be > 1");
    }
}

}  // namespace

double term_frequency(const BipartiteGraph& graph, std::uint32_t user,
                      std::uint32_t object) {
    if (user >= graph.user_count()) {
        throw NotFoundError("user index out of range");
    }
    auto w = graph.edge_weight(user, object);
    if (!w) {
        throw NotFoundError("edge (" + graph.user_key(user) + ", " +
                            (object < graph.object_count()
                                 ? graph.object_key(object)
                                 : std::to_string(object)) +
                            ") not present");
    }
    auto weights = graph.user_weights(user);
    double max_w = *std::max_element(weights.begin(), weights.end());
    return *w / max_w;
}

double inverse_user_frequency(const BipartiteGraph& graph,
                              std::uint32_t object,
                              const TfidfOptions& options) {
    check_base(options.log_base);
    if (object >= graph.object_count()) {
        throw NotFoundError("object index out of range");
    }
    std::uint32_t d = graph.object_degree(object);
    if (d == 0) {
        throw UndefinedValueError("idf undefined for zero-degree object");
    }
    return std::log(static_cast<double>(graph.user_count()) / d) /
           std::log(options.log_base);
}

TfidfWeights compute_tfidf(const BipartiteGraph& graph,
                           const TfidfOptions& options) {
    check_base(options.log_base);
    if (graph.empty()) {
        throw EmptyGraphError("cannot reweight an empty graph");
    }

    TfidfWeights out;
    out.log_base = options.log_base;
    const double inv_log_base = 1.0 / std::log(options.log_base);
    const auto n_u = static_cast<double>(graph.user_count());

    out.user_max_w.resize(graph.user_count());
    for (std::uint32_t u = 0; u < graph.user_count(); ++u) {
        auto weights = graph.user_weights(u);
        out.user_max_w[u] =
            weights.empty() ? 1.0
                            : *std::max_element(weights.begin(), weights.end());
    }
    out.object_idf.resize(graph.object_count());
    for (std::uint32_t o = 0; o < graph.object_count(); ++o) {
        out.object_idf[o] =
            std::log(n_u / graph.object_degree(o)) * inv_log_base;
    }

    auto edges = graph.edges();
    out.edge_f.resize(edges.size());
    out.edge_w_new.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        double f = edges[e].weight / out.user_max_w[edges[e].user];
        out.edge_f[e] = f;
        out.edge_w_new[e] = f * out.object_idf[edges[e].object];
    }
    return out;
}

BipartiteGraph tfidf_reweight(const BipartiteGraph& graph,
                              const TfidfOptions& options) {
    TfidfWeights w = compute_tfidf(graph, options);
    return graph.with_weights(w.edge_w_new);
}

BipartiteGraph filter_by_threshold(const BipartiteGraph& reweighted,
                                   double tau, FilterReport* report) {
    if (!std::isfinite(tau) || tau < 0.0) {
        throw InvalidArgumentError("threshold must be finite and >= 0");
    }
    auto edges = reweighted.edges();
    std::vector<bool> keep(edges.size());
    std::size_t removed = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        bool k = !(edges[e].weight < tau);  // strict removal, tau kept
        keep[e] = k;
        if (!k) ++removed;
    }
    BipartiteGraph filtered = reweighted.induced_by_edges(keep);
    if (report) {
        report->tau = tau;
        report->edges_removed = removed;
        report->users_remaining = filtered.user_count();
        report->objects_remaining = filtered.object_count();
        report->empty_result = filtered.edge_count() == 0;
    }
    return filtered;
}

}  // namespace ubnet
