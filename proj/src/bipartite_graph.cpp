#include "ubnet/bipartite_graph.hpp"

#include <algorithm>
#include <cmath>

#include "ubnet/error.hpp"

namespace ubnet {

const char* side_name(Side side) {
    return side == Side::users ? "users" : "objects";
}

double bipartite_density(std::size_t n_users, std::size_t n_objects,
                         std::size_t n_edges) {
    if (n_users == 0 || n_objects == 0) {
        throw UndefinedValueError("density undefined: empty node side");
    }
    return static_cast<double>(n_edges) /
           (static_cast<double>(n_users) * static_cast<double>(n_objects));
}

double one_mode_density(std::size_t n_nodes, std::size_t n_edges) {
    if (n_nodes < 2) {
        throw UndefinedValueError(
            "projected density undefined: fewer than 2 nodes");
    }
    return 2.0 * static_cast<double>(n_edges) /
           (static_cast<double>(n_nodes) * static_cast<double>(n_nodes - 1));
}

namespace {

std::uint32_t intern(std::string_view key, std::vector<std::string>& keys,
                     std::unordered_map<std::string, std::uint32_t>& ids) {
    auto it = ids.find(std::string(key));
    if (it != ids.end()) return it->second;
    auto id = static_cast<std::uint32_t>(keys.size());
    keys.emplace_back(key);
    ids.emplace(keys.back(), id);
    return id;
}

constexpr std::uint64_t pair_key(std::uint32_t u, std::uint32_t o) {
    return (static_cast<std::uint64_t>(u) << 32) | o;
}

}  // namespace

void BipartiteGraph::Builder::add(std::string_view user,
                                  std::string_view object, double weight) {
    if (user.empty() || object.empty()) {
        throw InvalidArgumentError("edge with empty user or object key");
    }
    if (!std::isfinite(weight) || weight <= 0.0) {
        throw InvalidArgumentError("edge weight must be finite and > 0");
    }
    std::uint32_t u = intern(user, user_keys_, user_ids_);
    std::uint32_t o = intern(object, object_keys_, object_ids_);
    auto [it, inserted] = weight_acc_.emplace(pair_key(u, o), weight);
    if (!inserted) {
        it->second += weight;
        ++duplicates_merged_;
    }
}

BipartiteGraph BipartiteGraph::Builder::build() && {
    BipartiteGraph g;
    g.user_keys_ = std::move(user_keys_);
    g.object_keys_ = std::move(object_keys_);
    g.user_ids_ = std::move(user_ids_);
    g.object_ids_ = std::move(object_ids_);
    g.edges_.reserve(weight_acc_.size());
    for (const auto& [key, w] : weight_acc_) {
        g.edges_.push_back(Edge{static_cast<std::uint32_t>(key >> 32),
                                static_cast<std::uint32_t>(key & 0xffffffffu),
                                w});
    }
    std::sort(g.edges_.begin(), g.edges_.end(),
              [](const Edge& a, const Edge& b) {
                  return a.user != b.user ? a.user < b.user
                                          : a.object < b.object;
              });
    g.build_indexes();
    return g;
}

void BipartiteGraph::build_indexes() {
    const std::size_t nu = user_keys_.size();
    const std::size_t no = object_keys_.size();
    const std::size_t m = edges_.size();

    user_offsets_.assign(nu + 1, 0);
    object_offsets_.assign(no + 1, 0);
    for (const Edge& e : edges_) {
        ++user_offsets_[e.user + 1];
        ++object_offsets_[e.object + 1];
    }
    for (std::size_t i = 1; i <= nu; ++i) user_offsets_[i] += user_offsets_[i - 1];
    for (std::size_t i = 1; i <= no; ++i)
        object_offsets_[i] += object_offsets_[i - 1];

    user_nbr_.resize(m);
    user_w_.resize(m);
    object_nbr_.resize(m);
    object_edge_.resize(m);

    // Edges are user-major with ascending object index, so the user-side
    // CSR fills sequentially and the object side gets ascending user
    // indices per object.
    std::vector<std::size_t> ucur(user_offsets_.begin(),
                                  user_offsets_.end() - 1);
    std::vector<std::size_t> ocur(object_offsets_.begin(),
                                  object_offsets_.end() - 1);
    for (std::size_t e = 0; e < m; ++e) {
        const Edge& ed = edges_[e];
        std::size_t up = ucur[ed.user]++;
        user_nbr_[up] = ed.object;
        user_w_[up] = ed.weight;
        std::size_t op = ocur[ed.object]++;
        object_nbr_[op] = ed.user;
        object_edge_[op] = static_cast<std::uint32_t>(e);
    }
}

std::optional<std::uint32_t> BipartiteGraph::find_user(
    std::string_view key) const {
    auto it = user_ids_.find(std::string(key));
    if (it == user_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> BipartiteGraph::find_object(
    std::string_view key) const {
    auto it = object_ids_.find(std::string(key));
    if (it == object_ids_.end()) return std::nullopt;
    return it->second;
}

std::span<const std::uint32_t> BipartiteGraph::user_neighbors(
    std::uint32_t u) const {
    return {user_nbr_.data() + user_offsets_[u],
            user_offsets_[u + 1] - user_offsets_[u]};
}

std::span<const double> BipartiteGraph::user_weights(std::uint32_t u) const {
    return {user_w_.data() + user_offsets_[u],
            user_offsets_[u + 1] - user_offsets_[u]};
}

std::span<const std::uint32_t> BipartiteGraph::object_neighbors(
    std::uint32_t o) const {
    return {object_nbr_.data() + object_offsets_[o],
            object_offsets_[o + 1] - object_offsets_[o]};
}

std::span<const std::uint32_t> BipartiteGraph::object_edge_ids(
    std::uint32_t o) const {
    return {object_edge_.data() + object_offsets_[o],
            object_offsets_[o + 1] - object_offsets_[o]};
}

std::uint32_t BipartiteGraph::user_degree(std::uint32_t u) const {
    return static_cast<std::uint32_t>(user_offsets_[u + 1] -
                                      user_offsets_[u]);
}

std::uint32_t BipartiteGraph::object_degree(std::uint32_t o) const {
    return static_cast<std::uint32_t>(object_offsets_[o + 1] -
                                      object_offsets_[o]);
}

std::uint32_t BipartiteGraph::degree(Side side, std::string_view key) const {
    if (side == Side::users) {
        auto u = find_user(key);
        if (!u) {
            throw NotFoundError("unknown user: " + std::string(key));
        }
        return user_degree(*u);
    }
    auto o = find_object(key);
    if (!o) {
        throw NotFoundError("unknown object: " + std::string(key));
    }
    return object_degree(*o);
}

std::optional<double> BipartiteGraph::edge_weight(std::uint32_t u,
                                                  std::uint32_t o) const {
    auto nbrs = user_neighbors(u);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), o);
    if (it == nbrs.end() || *it != o) return std::nullopt;
    return user_weights(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

double BipartiteGraph::density() const {
    return bipartite_density(user_count(), object_count(), edge_count());
}

std::pair<double, double> BipartiteGraph::average_degrees() const {
    if (user_count() == 0 || object_count() == 0) {
        throw UndefinedValueError("average degree undefined: empty node side");
    }
    double m = static_cast<double>(edge_count());
    return {m / static_cast<double>(user_count()),
            m / static_cast<double>(object_count())};
}

std::vector<BipartiteGraph::TopObject> BipartiteGraph::top_objects(
    std::size_t k) const {
    std::vector<std::uint32_t> order(object_count());
    for (std::uint32_t o = 0; o < object_count(); ++o) order[o] = o;
    std::sort(order.begin(), order.end(),
              [this](std::uint32_t a, std::uint32_t b) {
                  std::uint32_t da = object_degree(a), db = object_degree(b);
                  if (da != db) return da > db;
                  return object_keys_[a] < object_keys_[b];
              });
    if (order.size() > k) order.resize(k);
    std::vector<TopObject> out;
    out.reserve(order.size());
    const double nu = static_cast<double>(user_count());
    for (std::uint32_t o : order) {
        out.push_back(TopObject{object_keys_[o], object_degree(o),
                                nu > 0 ? object_degree(o) / nu : 0.0});
    }
    return out;
}

std::vector<std::uint32_t> BipartiteGraph::degree_sequence(Side side) const {
    std::vector<std::uint32_t> seq;
    if (side == Side::users) {
        seq.reserve(user_count());
        for (std::uint32_t u = 0; u < user_count(); ++u)
            seq.push_back(user_degree(u));
    } else {
        seq.reserve(object_count());
        for (std::uint32_t o = 0; o < object_count(); ++o)
            seq.push_back(object_degree(o));
    }
    return seq;
}

BipartiteGraph BipartiteGraph::induced_by_edges(
    const std::vector<bool>& keep) const {
    if (keep.size() != edges_.size()) {
        throw InvalidArgumentError("edge keep mask size mismatch");
    }
    constexpr std::uint32_t kAbsent = 0xffffffffu;
    std::vector<std::uint32_t> user_map(user_count(), kAbsent);
    std::vector<std::uint32_t> object_map(object_count(), kAbsent);

    BipartiteGraph g;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (!keep[e]) continue;
        const Edge& ed = edges_[e];
        if (user_map[ed.user] == kAbsent) {
            user_map[ed.user] =
                static_cast<std::uint32_t>(g.user_keys_.size());
            g.user_keys_.push_back(user_keys_[ed.user]);
        }
        if (object_map[ed.object] == kAbsent) {
            object_map[ed.object] =
                static_cast<std::uint32_t>(g.object_keys_.size());
            g.object_keys_.push_back(object_keys_[ed.object]);
        }
        g.edges_.push_back(
            Edge{user_map[ed.user], object_map[ed.object], ed.weight});
    }
    for (std::uint32_t u = 0; u < g.user_keys_.size(); ++u)
        g.user_ids_.emplace(g.user_keys_[u], u);
    for (std::uint32_t o = 0; o < g.object_keys_.size(); ++o)
        g.object_ids_.emplace(g.object_keys_[o], o);
    // Source order is user-major / object-ascending in the old index
    // space; the remap preserves relative order per user but object
    // indices are renumbered, so restore the canonical order.
    std::sort(g.edges_.begin(), g.edges_.end(),
              [](const Edge& a, const Edge& b) {
                  return a.user != b.user ? a.user < b.user
                                          : a.object < b.object;
              });
    g.build_indexes();
    return g;
}

BipartiteGraph BipartiteGraph::with_weights(
    std::span<const double> weights) const {
    if (weights.size() != edges_.size()) {
        throw InvalidArgumentError("weight array size mismatch");
    }
    BipartiteGraph g = *this;
    for (std::size_t e = 0; e < g.edges_.size(); ++e) {
        g.edges_[e].weight = weights[e];
    }
    std::size_t m = g.edges_.size();
    // Rebuild the user-side weight view to match.
    std::vector<std::size_t> ucur(g.user_offsets_.begin(),
                                  g.user_offsets_.end() - 1);
    for (std::size_t e = 0; e < m; ++e) {
        g.user_w_[ucur[g.edges_[e].user]++] = g.edges_[e].weight;
    }
    return g;
}

}  // namespace ubnet
