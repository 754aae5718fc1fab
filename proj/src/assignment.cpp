#include "driftgas/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace driftgas {

CostMatrix pairwise_distances(const std::vector<Vec>& prev,
                              const std::vector<Vec>& curr) {
    require(!prev.empty() && !curr.empty(), "pairwise_distances: empty point list");
    const std::size_t dim = prev.front().size();
    for (const auto& p : prev)
        require(p.size() == dim, "pairwise_distances: dimension mismatch");
    for (const auto& q : curr)
        require(q.size() == dim, "pairwise_distances: dimension mismatch");

    CostMatrix m;
    m.rows = prev.size();
    m.cols = curr.size();
    m.data.resize(m.rows * m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            m.at(r, c) = distance(prev[r], curr[c]);
    return m;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-augmenting-path assignment for nr <= nc. Returns col4row:
// col4row[i] is the column matched to row i. Classic Jonker-Volgenant
// structure with dual potentials u, v.
std::vector<int> lsap_rows_le_cols(std::size_t nr, std::size_t nc,
                                   const std::vector<double>& cost) {
    std::vector<double> u(nr, 0.0), v(nc, 0.0), shortest(nc);
    std::vector<int> path(nc), col4row(nr, -1), row4col(nc, -1);
    std::vector<bool> scanned_rows(nr), scanned_cols(nc);
    std::vector<std::size_t> remaining(nc);

    for (std::size_t cur_row = 0; cur_row < nr; ++cur_row) {
        std::fill(shortest.begin(), shortest.end(), kInf);
        std::fill(path.begin(), path.end(), -1);
        std::fill(scanned_rows.begin(), scanned_rows.end(), false);
        std::fill(scanned_cols.begin(), scanned_cols.end(), false);
        for (std::size_t j = 0; j < nc; ++j) remaining[j] = j;
        std::size_t num_remaining = nc;

        double min_val = 0.0;
        std::size_t i = cur_row;
        int sink = -1;
        while (sink == -1) {
            scanned_rows[i] = true;
            std::size_t index = 0;
            double lowest = kInf;
            for (std::size_t it = 0; it < num_remaining; ++it) {
                const std::size_t j = remaining[it];
                const double r = min_val + cost[i * nc + j] - u[i] - v[j];
                if (r < shortest[j]) {
                    path[j] = static_cast<int>(i);
                    shortest[j] = r;
                }
                // prefer unassigned columns on ties so augmentation terminates
                if (shortest[j] < lowest ||
                    (shortest[j] == lowest && row4col[j] == -1)) {
                    lowest = shortest[j];
                    index = it;
                }
            }
            min_val = lowest;
            require(min_val != kInf, "solve_assignment: infeasible cost matrix");

            const std::size_t j = remaining[index];
            if (row4col[j] == -1)
                sink = static_cast<int>(j);
            else
                i = static_cast<std::size_t>(row4col[j]);
            scanned_cols[j] = true;
            remaining[index] = remaining[--num_remaining];
        }

        u[cur_row] += min_val;
        for (std::size_t r = 0; r < nr; ++r)
            if (scanned_rows[r] && r != cur_row)
                u[r] += min_val - shortest[static_cast<std::size_t>(col4row[r])];
        for (std::size_t j = 0; j < nc; ++j)
            if (scanned_cols[j]) v[j] -= min_val - shortest[j];

        // augment along the alternating path back to cur_row
        int j = sink;
        while (true) {
            const int r = path[static_cast<std::size_t>(j)];
            row4col[static_cast<std::size_t>(j)] = r;
            std::swap(col4row[static_cast<std::size_t>(r)], j);
            if (r == static_cast<int>(cur_row)) break;
        }
    }
    return col4row;
}

}  // namespace

NodeMapping solve_assignment(const CostMatrix& cost) {
    require(cost.rows > 0 && cost.cols > 0, "solve_assignment: empty cost matrix");
    for (double x : cost.data)
        require(std::isfinite(x), "solve_assignment: non-finite cost entry");

    const bool transpose = cost.rows > cost.cols;
    const std::size_t nr = transpose ? cost.cols : cost.rows;
    const std::size_t nc = transpose ? cost.rows : cost.cols;

    // every matching has exactly min(rows, cols) entries, so shifting all
    // entries by a constant preserves the argmin; shift keeps the reduced
    // costs non-negative for the Dijkstra scans below
    const double lowest = *std::min_element(cost.data.begin(), cost.data.end());
    const double shift = lowest < 0.0 ? -lowest : 0.0;

    std::vector<double> c(nr * nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t j = 0; j < nc; ++j)
            c[r * nc + j] = (transpose ? cost.at(j, r) : cost.at(r, j)) + shift;

    const std::vector<int> col4row = lsap_rows_le_cols(nr, nc, c);

    NodeMapping m;
    m.pairs.reserve(nr);
    for (std::size_t r = 0; r < nr; ++r) {
        const auto j = static_cast<std::size_t>(col4row[r]);
        if (transpose)
            m.pairs.emplace_back(j, r);
        else
            m.pairs.emplace_back(r, j);
    }
    std::sort(m.pairs.begin(), m.pairs.end());
    for (const auto& [p, q] : m.pairs) m.total_cost += cost.at(p, q);
    return m;
}

}  // namespace driftgas
