#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "driftgas/core.hpp"

namespace driftgas {

// Standard growing-neural-gas hyperparameters. max_nodes is the growth
// budget (G0 in the pipeline); the remaining values follow the classic
// Fritzke formulation.
struct GngParams {
    std::size_t max_nodes = 100;
    double eps_winner = 0.05;
    double eps_neighbor = 0.006;
    int max_edge_age = 50;
    int insertion_interval = 100;    // lambda: signals between node insertions
    double error_split_decay = 0.5;  // alpha
    double error_global_decay = 0.995;  // d
};

struct GngNode {
    int id = -1;
    Vec position;
    double error = 0.0;
};

struct GngEdge {
    int a = -1;  // node ids, a < b
    int b = -1;
    int age = 0;
};

/**
 * Incremental growing neural gas over a stream of feature vectors.
 *
 * Nodes quantize the input distribution; edges capture its topology via
 * competitive Hebbian learning. The graph grows one node every
 * insertion_interval signals up to max_nodes and prunes edges past
 * max_edge_age together with the nodes they leave isolated (never dropping
 * below two nodes).
 *
 * Single writer: signal order is semantically meaningful. Snapshots are
 * deep copies and freely shareable.
 */
class GngModel {
public:
    // Two distinct finite vectors of equal dimension seed the graph with one
    // age-0 edge between them.
    GngModel(const Vec& first, const Vec& second, const GngParams& params);

    // One signal step: winner/second search, edge aging, error accumulation,
    // winner + neighbor adaptation, edge refresh, pruning, periodic
    // insertion, global error decay.
    void present(const Vec& x);

    // Presents every vector in xs `passes` times, reshuffling per pass with
    // the supplied RNG.
    void fit_batch(const std::vector<Vec>& xs, int passes, std::mt19937_64& rng);

    // Deep copy of node positions in stable id order.
    std::vector<Vec> snapshot() const;

    const std::vector<GngNode>& nodes() const { return nodes_; }
    const std::vector<GngEdge>& edges() const { return edges_; }
    const GngParams& params() const { return params_; }
    std::size_t dim() const { return dim_; }
    std::uint64_t signal_count() const { return signal_count_; }

private:
    GngParams params_;
    std::vector<GngNode> nodes_;  // ascending id order
    std::vector<GngEdge> edges_;
    std::size_t dim_ = 0;
    int next_id_ = 0;
    std::uint64_t signal_count_ = 0;

    std::size_t node_index(int id) const;
    std::vector<int> neighbors_of(int id) const;
    void refresh_edge(int a, int b);
    void prune(int winner_id, int second_id);
    void insert_node();
};

}  // namespace driftgas
