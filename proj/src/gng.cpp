#include "driftgas/gng.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace driftgas {

GngModel::GngModel(const Vec& first, const Vec& second, const GngParams& params)
    : params_(params), dim_(first.size()) {
    require(params_.max_nodes >= 2, "gng: max_nodes must be >= 2");
    require(params_.eps_winner > 0.0 && params_.eps_winner <= 1.0,
            "gng: eps_winner must be in (0,1]");
    require(params_.eps_neighbor > 0.0 && params_.eps_neighbor < params_.eps_winner,
            "gng: eps_neighbor must be in (0, eps_winner)");
    require(params_.max_edge_age >= 1, "gng: max_edge_age must be positive");
    require(params_.insertion_interval >= 1, "gng: insertion_interval must be positive");
    require(params_.error_split_decay > 0.0 && params_.error_split_decay < 1.0,
            "gng: error_split_decay must be in (0,1)");
    require(params_.error_global_decay > 0.0 && params_.error_global_decay < 1.0,
            "gng: error_global_decay must be in (0,1)");
    require(first.size() == second.size(), "gng: seed vectors differ in dimension");
    require(is_finite(first) && is_finite(second), "gng: seed vectors must be finite");
    require(first != second, "gng: seed vectors must be distinct");

    nodes_.push_back({next_id_++, first, 0.0});
    nodes_.push_back({next_id_++, second, 0.0});
    edges_.push_back({0, 1, 0});
}

std::size_t GngModel::node_index(int id) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].id == id) return i;
    throw std::logic_error("gng: unknown node id");
}

std::vector<int> GngModel::neighbors_of(int id) const {
    std::vector<int> out;
    for (const auto& e : edges_) {
        if (e.a == id) out.push_back(e.b);
        else if (e.b == id) out.push_back(e.a);
    }
    return out;
}

void GngModel::refresh_edge(int a, int b) {
    if (a > b) std::swap(a, b);
    for (auto& e : edges_) {
        if (e.a == a && e.b == b) {
            e.age = 0;
            return;
        }
    }
    edges_.push_back({a, b, 0});
}

void GngModel::prune(int winner_id, int second_id) {
    std::vector<int> touched;
    std::erase_if(edges_, [&](const GngEdge& e) {
        if (e.age > params_.max_edge_age) {
            touched.push_back(e.a);
            touched.push_back(e.b);
            return true;
        }
        return false;
    });
    if (touched.empty()) return;

    // Only endpoints of removed edges can be stranded. Drop them in id order
    // while more than two nodes remain; the winner and second keep their
    // fresh mutual edge and are never hit.
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int id : touched) {
        if (nodes_.size() <= 2) break;
        if (id == winner_id || id == second_id) continue;
        if (neighbors_of(id).empty())
            nodes_.erase(nodes_.begin() +
                         static_cast<std::ptrdiff_t>(node_index(id)));
    }
}

void GngModel::insert_node() {
    // q: node with the largest accumulated error; f: its worst neighbor.
    std::size_t qi = 0;
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (nodes_[i].error > nodes_[qi].error) qi = i;

    const int q_id = nodes_[qi].id;
    int f_id = -1;
    double f_err = -1.0;
    for (int nb : neighbors_of(q_id)) {
        const auto& n = nodes_[node_index(nb)];
        if (n.error > f_err) {
            f_err = n.error;
            f_id = nb;
        }
    }
    if (f_id < 0) return;  // q isolated (possible only at the two-node floor)

    GngNode& q = nodes_[qi];
    GngNode& f = nodes_[node_index(f_id)];
    Vec mid(dim_);
    for (std::size_t d = 0; d < dim_; ++d) mid[d] = 0.5 * (q.position[d] + f.position[d]);

    q.error *= params_.error_split_decay;
    f.error *= params_.error_split_decay;
    const double new_error = q.error;  // read before push_back may reallocate
    const int r_id = next_id_++;
    nodes_.push_back({r_id, std::move(mid), new_error});

    std::erase_if(edges_, [&](const GngEdge& e) {
        return e.a == std::min(q_id, f_id) && e.b == std::max(q_id, f_id);
    });
    edges_.push_back({std::min(q_id, r_id), std::max(q_id, r_id), 0});
    edges_.push_back({std::min(f_id, r_id), std::max(f_id, r_id), 0});
}

void GngModel::present(const Vec& x) {
    require(x.size() == dim_, "gng: signal dimension mismatch");
    require(is_finite(x), "gng: signal must be finite");

    // (a) nearest and second-nearest nodes; ties go to the lower id.
    std::size_t s1 = 0, s2 = 1;
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const double d = squared_distance(x, nodes_[i].position);
        if (d < d1) {
            d2 = d1;
            s2 = s1;
            d1 = d;
            s1 = i;
        } else if (d < d2) {
            d2 = d;
            s2 = i;
        }
    }
    const int s1_id = nodes_[s1].id;
    const int s2_id = nodes_[s2].id;

    // (b) age the winner's edges
    for (auto& e : edges_)
        if (e.a == s1_id || e.b == s1_id) ++e.age;

    // (c) accumulate the winner's quantization error
    nodes_[s1].error += d1;

    // (d) adapt winner and its topological neighbors
    for (std::size_t d = 0; d < dim_; ++d)
        nodes_[s1].position[d] += params_.eps_winner * (x[d] - nodes_[s1].position[d]);
    for (int nb : neighbors_of(s1_id)) {
        GngNode& n = nodes_[node_index(nb)];
        for (std::size_t d = 0; d < dim_; ++d)
            n.position[d] += params_.eps_neighbor * (x[d] - n.position[d]);
    }

    // (e) connect winner and runner-up
    refresh_edge(s1_id, s2_id);

    // (f) drop stale edges and stranded nodes
    prune(s1_id, s2_id);

    // (g) periodic growth
    ++signal_count_;
    if (signal_count_ % static_cast<std::uint64_t>(params_.insertion_interval) == 0 &&
        nodes_.size() < params_.max_nodes)
        insert_node();

    // (h) global error decay
    for (auto& n : nodes_) n.error *= params_.error_global_decay;
}

void GngModel::fit_batch(const std::vector<Vec>& xs, int passes, std::mt19937_64& rng) {
    require(!xs.empty(), "gng: empty batch");
    require(passes >= 1, "gng: passes must be >= 1");

    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (int p = 0; p < passes; ++p) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) present(xs[i]);
    }
}

std::vector<Vec> GngModel::snapshot() const {
    std::vector<Vec> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) out.push_back(n.position);
    return out;
}

}  // namespace driftgas
