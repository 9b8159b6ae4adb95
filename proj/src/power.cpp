#include "confsurf/power.hpp"

#include <cmath>

#include "confsurf/metric.hpp"

namespace confsurf {

EdgePower edge_power(double l, double ri, double rj) {
    if (!(l > 0)) throw GeometryError("edge length must be positive");
    // radius^2 = (l^2 - (ri+rj)^2)(l^2 - (ri-rj)^2) / (2l)^2, positive exactly
    // when the circles are disjoint.
    double sq = (l * l - (ri + rj) * (ri + rj)) * (l * l - (ri - rj) * (ri - rj));
    if (!(sq > 0))
        throw GeometryError("vertex circles are not disjoint along the edge");
    EdgePower out;
    out.foot = (l * l + ri * ri - rj * rj) / (2.0 * l);
    out.radius = std::sqrt(sq) / (2.0 * l);
    return out;
}

TrianglePowerData triangle_power(const std::array<double, 3>& l,
                                 const std::array<double, 3>& r) {
    TrianglePowerData pd;
    // Canonical layout: side 2 on the x-axis from corner 0 to corner 1.
    double x = (l[2] * l[2] + l[1] * l[1] - l[0] * l[0]) / (2.0 * l[2]);
    double ysq = (l[1] - x) * (l[1] + x);
    if (!(l[2] > 0) || !(ysq > 0)) throw GeometryError("degenerate triangle layout");
    pd.corner[0] = {0.0, 0.0};
    pd.corner[1] = {l[2], 0.0};
    pd.corner[2] = {x, std::sqrt(ysq)};

    // Radical center: the point whose power is the same with respect to all
    // three vertex circles. Equating powers pairwise gives a linear system.
    Eigen::Matrix2d A;
    Eigen::Vector2d rhs;
    for (int i = 0; i < 2; ++i) {
        Eigen::Vector2d d = pd.corner[i + 1] - pd.corner[0];
        A.row(i) = 2.0 * d.transpose();
        rhs[i] = pd.corner[i + 1].squaredNorm() - pd.corner[0].squaredNorm() -
                 r[i + 1] * r[i + 1] + r[0] * r[0];
    }
    pd.center = A.partialPivLu().solve(rhs);
    pd.center_power = (pd.center - pd.corner[0]).squaredNorm() - r[0] * r[0];
    if (!(pd.center_power > 0))
        throw GeometryError("face circle has nonpositive squared radius");

    for (int s = 0; s < 3; ++s) {
        int a = (s + 1) % 3, b = (s + 2) % 3;
        EdgePower ep = edge_power(l[s], r[a], r[b]);
        pd.foot[s] = ep.foot;
        pd.edge_radius[s] = ep.radius;
        Eigen::Vector2d dir = pd.corner[b] - pd.corner[a];
        Eigen::Vector2d off = pd.center - pd.corner[a];
        // Positive when the center lies on the triangle's side of the edge.
        pd.dist[s] = (dir.x() * off.y() - dir.y() * off.x()) / l[s];
        pd.alpha[s] = std::atan2(pd.edge_radius[s], pd.dist[s]);
    }
    return pd;
}

MinkowskiLift minkowski_lift(const std::array<double, 3>& l,
                             const std::array<double, 3>& r) {
    TrianglePowerData pd = triangle_power(l, r);
    double R = std::sqrt(pd.center_power);
    MinkowskiLift out;
    for (int c = 0; c < 3; ++c) {
        Eigen::Vector2d q = pd.corner[c] - pd.center;
        out.p[c] = {q.x(), q.y(), R};
    }
    return out;
}

namespace {

Eigen::Matrix3d layout_to_lift(const TrianglePowerData& pd) {
    Eigen::Matrix3d B = Eigen::Matrix3d::Identity();
    B(0, 2) = -pd.center.x();
    B(1, 2) = -pd.center.y();
    B(2, 2) = std::sqrt(pd.center_power);
    return B;
}

}  // namespace

Eigen::Matrix3d projective_map(const std::array<double, 3>& l,
                               const std::array<double, 3>& r,
                               const std::array<double, 3>& u) {
    std::array<double, 3> lt, rt;
    for (int s = 0; s < 3; ++s) {
        int a = (s + 1) % 3, b = (s + 2) % 3;
        lt[s] = scaled_edge_length(l[s], r[a], r[b], u[a], u[b], false);
        rt[s] = std::exp(u[s]) * r[s];
    }
    TrianglePowerData pd = triangle_power(l, r);
    TrianglePowerData pdt = triangle_power(lt, rt);

    // Lifted corners satisfy <p~_a, p~_b> = e^{u_a+u_b} <p_a, p_b> for every
    // pair, so p_c -> e^{-u_c} p~_c preserves the quadratic form and carries
    // the light cone (hence the face circle) along with the corners.
    Eigen::Matrix3d P, Pt;
    MinkowskiLift lift = minkowski_lift(l, r), liftt = minkowski_lift(lt, rt);
    for (int c = 0; c < 3; ++c) {
        P.col(c) = lift.p[c];
        Pt.col(c) = liftt.p[c];
    }
    Eigen::Vector3d scale = {std::exp(-u[0]), std::exp(-u[1]), std::exp(-u[2])};
    Eigen::Matrix3d L = Pt * scale.asDiagonal() * P.partialPivLu().inverse();

    Eigen::Matrix3d M = layout_to_lift(pdt).partialPivLu().solve(L * layout_to_lift(pd));
    double pivot = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (std::abs(M(i, j)) > std::abs(pivot)) pivot = M(i, j);
    return M / pivot;
}

Eigen::Matrix3d per_face_angle_jacobian(const TrianglePowerData& pd,
                                        const std::array<double, 3>& l) {
    // d theta^c = sum over the two sides at corner c of
    // (dist/length) * (du_other - du_c); the side joining corners c and c+1
    // is side c+2. Symmetric with zero row and column sums by construction.
    Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
    for (int c = 0; c < 3; ++c) {
        int s1 = (c + 2) % 3, s2 = (c + 1) % 3;
        double w1 = pd.dist[s1] / l[s1];
        double w2 = pd.dist[s2] / l[s2];
        J(c, (c + 1) % 3) += w1;
        J(c, (c + 2) % 3) += w2;
        J(c, c) -= w1 + w2;
    }
    return J;
}

}  // namespace confsurf
