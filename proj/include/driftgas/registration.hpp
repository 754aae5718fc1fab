#pragma once

#include <Eigen/Dense>
#include <vector>

#include "driftgas/assignment.hpp"
#include "driftgas/core.hpp"

namespace driftgas {

// Proper rigid motion applied as x' = R * (x + t): translate first, then
// rotate. R is orthogonal with det +1 (reflections are never produced).
struct RigidTransform {
    Eigen::MatrixXd rotation;
    Eigen::VectorXd translation;

    static RigidTransform identity(std::size_t dim);
    bool is_identity() const;
};

// Least-squares fit of (R, t) minimizing sum over matched pairs of
// ||R * (prev[g] + t) - curr[g']||^2, via Kabsch-Umeyama:
//   H = sum (P_i - cP)(Q_i - cQ)^T,  H = U S V^T,
//   R = V diag(1,..,1,det(V U^T)) U^T,  t = R^T cQ - cP.
// Fewer than 2 matched pairs yields the identity (projection is skipped for
// that batch). A degenerate configuration (all matched points coincident,
// collinear in higher dimensions) still returns some minimizer with det +1.
RigidTransform fit_rigid(const std::vector<Vec>& prev, const std::vector<Vec>& curr,
                         const NodeMapping& mapping);

// x' = R * (x + t) for every point, order preserved.
std::vector<Vec> project(const std::vector<Vec>& points, const RigidTransform& xform);

// Objective of the fit: sum of squared residuals over the matched pairs.
double rigid_residual(const std::vector<Vec>& prev, const std::vector<Vec>& curr,
                      const NodeMapping& mapping, const RigidTransform& xform);

}  // namespace driftgas
