#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ubnet {

enum class Side { users, objects };

const char* side_name(Side side);

// Edge of the bipartite user-object graph. Weight is the interaction
// strength (reinforcement count or rating-derived value), always > 0.
struct Edge {
    std::uint32_t user;
    std::uint32_t object;
    double weight;
};

// Density m / (n_u * n_o); throws UndefinedValueError when a side is empty.
double bipartite_density(std::size_t n_users, std::size_t n_objects,
                         std::size_t n_edges);

// Density 2m / (n (n-1)) of a one-mode graph; throws for n < 2.
double one_mode_density(std::size_t n_nodes, std::size_t n_edges);

// Immutable bipartite graph over interned string keys. Node indices are
// dense and assigned in first-appearance order; edges are stored
// user-major with ascending object index, which fixes the byte layout of
// every dump derived from a given input.
class BipartiteGraph {
public:
    class Builder {
    public:
        // Duplicate (user, object) pairs are merged by summing weights.
        // Weights must be finite and > 0 (callers drop zero-weight
        // records before adding).
        void add(std::string_view user, std::string_view object,
                 double weight = 1.0);

        std::size_t duplicates_merged() const { return duplicates_merged_; }

        BipartiteGraph build() &&;

    private:
        std::vector<std::string> user_keys_;
        std::vector<std::string> object_keys_;
        std::unordered_map<std::string, std::uint32_t> user_ids_;
        std::unordered_map<std::string, std::uint32_t> object_ids_;
        std::unordered_map<std::uint64_t, double> weight_acc_;
        std::size_t duplicates_merged_ = 0;
    };

    BipartiteGraph() = default;

    std::size_t user_count() const { return user_keys_.size(); }
    std::size_t object_count() const { return object_keys_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }

    const std::string& user_key(std::uint32_t u) const { return user_keys_[u]; }
    const std::string& object_key(std::uint32_t o) const {
        return object_keys_[o];
    }
    std::optional<std::uint32_t> find_user(std::string_view key) const;
    std::optional<std::uint32_t> find_object(std::string_view key) const;

    std::span<const Edge> edges() const { return edges_; }

    // Neighbor object indices of a user, ascending; weights aligned.
    std::span<const std::uint32_t> user_neighbors(std::uint32_t u) const;
    std::span<const double> user_weights(std::uint32_t u) const;

    // Neighbor user indices of an object, ascending; edge ids aligned.
    std::span<const std::uint32_t> object_neighbors(std::uint32_t o) const;
    std::span<const std::uint32_t> object_edge_ids(std::uint32_t o) const;

    std::uint32_t user_degree(std::uint32_t u) const;
    std::uint32_t object_degree(std::uint32_t o) const;

    // Unweighted degree by key; unknown key -> NotFoundError.
    std::uint32_t degree(Side side, std::string_view key) const;

    std::optional<double> edge_weight(std::uint32_t u, std::uint32_t o) const;

    double density() const;
    // (m / n_u, m / n_o); throws when a side is empty.
    std::pair<double, double> average_degrees() const;

    struct TopObject {
        std::string key;
        std::uint32_t degree;
        double user_fraction;  // degree / n_u
    };
    // k objects with highest degree; ties broken by key, ascending.
    std::vector<TopObject> top_objects(std::size_t k) const;

    std::vector<std::uint32_t> degree_sequence(Side side) const;

    // Subgraph containing exactly the edges with keep[edge_id] set; nodes
    // left without edges are dropped and survivors are re-interned in
    // original index order.
    BipartiteGraph induced_by_edges(const std::vector<bool>& keep) const;

    // Same structure, new per-edge weights (aligned with edges()).
    BipartiteGraph with_weights(std::span<const double> weights) const;

private:
    void build_indexes();

    std::vector<std::string> user_keys_;
    std::vector<std::string> object_keys_;
    std::unordered_map<std::string, std::uint32_t> user_ids_;
    std::unordered_map<std::string, std::uint32_t> object_ids_;

    std::vector<Edge> edges_;  // user-major, object ascending

    // CSR over both sides. User side reuses the edge array order;
    // object side stores edge ids into edges_.
    std::vector<std::size_t> user_offsets_;
    std::vector<std::uint32_t> user_nbr_;
    std::vector<double> user_w_;
    std::vector<std::size_t> object_offsets_;
    std::vector<std::uint32_t> object_nbr_;
    std::vector<std::uint32_t> object_edge_;
};

}  // namespace ubnet
