// Shared test-only helpers: independent oracles and random generators kept
// deliberately separate from the library implementation paths they check.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "driftgas/assignment.hpp"
#include "driftgas/core.hpp"

namespace testutil {

// Exhaustive minimum-cost matching of size min(rows, cols); the oracle for
// solve_assignment. Recursion over injections of the smaller side.
inline double brute_force_assignment_cost(const driftgas::CostMatrix& cost) {
    const bool transpose = cost.rows > cost.cols;
    const std::size_t nr = transpose ? cost.cols : cost.rows;
    const std::size_t nc = transpose ? cost.rows : cost.cols;
    auto at = [&](std::size_t r, std::size_t c) {
        return transpose ? cost.at(c, r) : cost.at(r, c);
    };

    double floor_entry = 0.0;  // sound pruning bound even for negative costs
    for (double x : cost.data) floor_entry = std::min(floor_entry, x);

    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> used(nc, false);
    auto recurse = [&](auto&& self, std::size_t row, double acc) -> void {
        if (row == nr) {
            best = std::min(best, acc);
            return;
        }
        if (acc + static_cast<double>(nr - row) * floor_entry >= best) return;
        for (std::size_t c = 0; c < nc; ++c) {
            if (used[c]) continue;
            used[c] = true;
            self(self, row + 1, acc + at(row, c));
            used[c] = false;
        }
    };
    recurse(recurse, 0, 0.0);
    return best;
}

// Haar-ish random proper rotation via QR with sign fix-up.
inline Eigen::MatrixXd random_rotation(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) a(r, c) = gauss(rng);

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i)
        if (r(i, i) < 0.0) q.col(i) = -q.col(i);
    if (q.determinant() < 0.0) q.col(0) = -q.col(0);
    return q;
}

// Confusion-matrix metrics recomputed the dumb way (independent of the
// metrics module internals).
struct NaiveF1 {
    double macro_f1 = 0.0;
    std::map<driftgas::ClassId, double> per_class_f1;
};

inline NaiveF1 naive_macro_f1(const std::vector<driftgas::ClassId>& truth,
                              const std::vector<driftgas::ClassId>& pred,
                              const std::vector<driftgas::ClassId>& classes) {
    NaiveF1 out;
    for (driftgas::ClassId c : classes) {
        long long tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (truth[i] == c && pred[i] == c) ++tp;
            if (truth[i] != c && pred[i] == c) ++fp;
            if (truth[i] == c && pred[i] != c) ++fn;
        }
        const double prec = (tp + fp) ? double(tp) / double(tp + fp) : 0.0;
        const double rec = (tp + fn) ? double(tp) / double(tp + fn) : 0.0;
        const double f1 = (prec + rec) > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
        out.per_class_f1[c] = f1;
        out.macro_f1 += f1;
    }
    out.macro_f1 /= static_cast<double>(classes.size());
    return out;
}

// O(n^2) prequential recomputation: re-sums the losses for every t.
inline std::vector<double> naive_prequential(const std::vector<driftgas::ClassId>& truth,
                                             const std::vector<driftgas::ClassId>& pred) {
    std::vector<double> out(truth.size());
    for (std::size_t t = 0; t < truth.size(); ++t) {
        std::size_t errs = 0;
        for (std::size_t i = 0; i <= t; ++i)
            if (truth[i] != pred[i]) ++errs;
        out[t] = 100.0 * static_cast<double>(errs) / static_cast<double>(t + 1);
    }
    return out;
}

inline driftgas::Vec random_vec(std::size_t dim, std::mt19937_64& rng, double lo = -1.0,
                                double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    driftgas::Vec v(dim);
    for (auto& x : v) x = u(rng);
    return v;
}

}  // namespace testutil
