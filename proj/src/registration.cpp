#include "driftgas/registration.hpp"

#include <Eigen/SVD>

namespace driftgas {

namespace {

Eigen::VectorXd to_eigen(const Vec& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

RigidTransform RigidTransform::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return {Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n)};
}

bool RigidTransform::is_identity() const {
    return rotation.isIdentity(0.0) && translation.isZero(0.0);
}

RigidTransform fit_rigid(const std::vector<Vec>& prev, const std::vector<Vec>& curr,
                         const NodeMapping& mapping) {
    require(!prev.empty() && !curr.empty(), "fit_rigid: empty point list");
    const std::size_t dim = prev.front().size();
    require(curr.front().size() == dim, "fit_rigid: dimension mismatch");

    if (mapping.pairs.size() < 2) return RigidTransform::identity(dim);

    const auto n = static_cast<Eigen::Index>(dim);
    const auto m = static_cast<Eigen::Index>(mapping.pairs.size());

    Eigen::MatrixXd p(m, n), q(m, n);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& [gp, gc] = mapping.pairs[static_cast<std::size_t>(i)];
        require(gp < prev.size() && gc < curr.size(), "fit_rigid: mapping index out of range");
        p.row(i) = to_eigen(prev[gp]).transpose();
        q.row(i) = to_eigen(curr[gc]).transpose();
    }

    const Eigen::RowVectorXd cp = p.colwise().mean();
    const Eigen::RowVectorXd cq = q.colwise().mean();
    const Eigen::MatrixXd h = (p.rowwise() - cp).transpose() * (q.rowwise() - cq);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd& u = svd.matrixU();
    const Eigen::MatrixXd& v = svd.matrixV();

    Eigen::VectorXd correction = Eigen::VectorXd::Ones(n);
    correction(n - 1) = ((v * u.transpose()).determinant() < 0.0) ? -1.0 : 1.0;

    RigidTransform xf;
    xf.rotation = v * correction.asDiagonal() * u.transpose();
    // translate-then-rotate convention: R * (cP + t) must equal cQ
    xf.translation = xf.rotation.transpose() * cq.transpose() - cp.transpose();
    return xf;
}

std::vector<Vec> project(const std::vector<Vec>& points, const RigidTransform& xform) {
    const auto dim = static_cast<std::size_t>(xform.translation.size());
    std::vector<Vec> out;
    out.reserve(points.size());
    for (const auto& pt : points) {
        require(pt.size() == dim, "project: dimension mismatch");
        const Eigen::VectorXd y = xform.rotation * (to_eigen(pt) + xform.translation);
        out.emplace_back(y.data(), y.data() + y.size());
    }
    return out;
}

double rigid_residual(const std::vector<Vec>& prev, const std::vector<Vec>& curr,
                      const NodeMapping& mapping, const RigidTransform& xform) {
    double total = 0.0;
    for (const auto& [gp, gc] : mapping.pairs) {
        const Eigen::VectorXd y = xform.rotation * (to_eigen(prev[gp]) + xform.translation);
        total += (y - to_eigen(curr[gc])).squaredNorm();
    }
    return total;
}

}  // namespace driftgas
