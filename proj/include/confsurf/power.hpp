#pragma once

#include <array>

#include <Eigen/Dense>

#include "confsurf/errors.hpp"

namespace confsurf {

// Radical-axis data of one edge: the foot is the distance from the first
// endpoint to the point where the radical axis of the two vertex circles
// crosses the edge; radius is the radius of the circle centered there that is
// orthogonal to both vertex circles (half the chord the face circle cuts on
// the edge line).
struct EdgePower {
    double foot = 0;
    double radius = 0;
};

// foot = (l^2 + ri^2 - rj^2) / (2l), radius = sqrt(foot^2 - ri^2).
// Throws GeometryError when the circles are not disjoint along the edge.
EdgePower edge_power(double l, double ri, double rj);

// Power geometry of a decorated triangle in its canonical layout: corner 0 at
// the origin, corner 1 on the positive x-axis, corner 2 in the upper half
// plane. Side s (opposite corner s) runs from corner s+1 to corner s+2, so
// every signed distance is positive when the face circle center lies on the
// triangle's side of that edge line.
struct TrianglePowerData {
    std::array<Eigen::Vector2d, 3> corner;
    Eigen::Vector2d center;   // center of the face circle (radical center)
    double center_power = 0;  // squared face circle radius

    // Per side, indexed by the opposite corner:
    std::array<double, 3> foot;         // radical-axis foot from the side's first corner
    std::array<double, 3> edge_radius;  // orthogonal circle radius on that edge
    std::array<double, 3> dist;         // signed center-to-edge distance
    std::array<double, 3> alpha;        // angle between face circle and edge, in (0, pi)

    // dist = edge_radius * cot(alpha) and dist^2 + edge_radius^2 =
    // center_power hold on every side by construction.
};

// Lays the triangle out, solves the 2x2 radical-center system, and derives the
// per-edge data. Lengths and radii are indexed by opposite corner. Throws
// GeometryError on degenerate triangles or non-disjoint circles (including a
// non-positive squared face circle radius).
TrianglePowerData triangle_power(const std::array<double, 3>& l,
                                 const std::array<double, 3>& r);

// Lift of the three corners to the quadric <p,p> = x^2 + y^2 - z^2: corner c
// maps to (layout position - face circle center, face circle radius), so
// <p_c, p_c> = r_c^2 and <p_a - p_b, p_a - p_b> = l_ab^2.
struct MinkowskiLift {
    std::array<Eigen::Vector3d, 3> p;
};

MinkowskiLift minkowski_lift(const std::array<double, 3>& l,
                             const std::array<double, 3>& r);

// Projective map taking the canonical layout of the source triangle onto the
// canonical layout of its conformal image under per-corner scale factors u,
// carrying the source face circle onto the image face circle. Acts on layout
// points as homogeneous coordinates (x, y, 1); normalized so the entry of
// largest magnitude is +1.
Eigen::Matrix3d projective_map(const std::array<double, 3>& l,
                               const std::array<double, 3>& r,
                               const std::array<double, 3>& u);

// Jacobian of the three corner angles of one face with respect to the
// logarithmic scale factors at its corners: row c is the gradient of the
// angle at corner c. Rows and columns sum to zero (angles are scale
// invariant and theta^0 + theta^1 + theta^2 = pi is constant).
Eigen::Matrix3d per_face_angle_jacobian(const TrianglePowerData& pd,
                                        const std::array<double, 3>& l);

}  // namespace confsurf
