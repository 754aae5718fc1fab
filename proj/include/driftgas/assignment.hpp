#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "driftgas/core.hpp"

namespace driftgas {

// Dense rows x cols matrix of pairwise costs (Euclidean distances in the
// pipeline). Entries must be finite and non-negative.
struct CostMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // row-major

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
};

// Minimum-cost matching of size min(rows, cols). Each row and each column
// appears at most once; pairs are sorted by prev index.
struct NodeMapping {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (prev, curr)
    double total_cost = 0.0;
};

CostMatrix pairwise_distances(const std::vector<Vec>& prev,
                              const std::vector<Vec>& curr);

// Exact rectangular assignment via Jonker-Volgenant shortest augmenting
// paths (O(min^2 * max)). Any cost-optimal matching may be returned when the
// optimum is not unique.
NodeMapping solve_assignment(const CostMatrix& cost);

}  // namespace driftgas
