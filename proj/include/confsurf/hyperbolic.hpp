#pragma once

#include <array>
#include <vector>

#include "confsurf/metric.hpp"

namespace confsurf {

// Heights of the vertices over the reference horosphere, plus the vertex type
// flag: eps = 1 for a positive radius (hyperideal end), eps = 0 for radius
// zero (ideal end / cusp). The flag is a property of the input decoration and
// never changes under conformal scaling.
struct HeightVector {
    std::vector<double> h;
    std::vector<int> eps;
};

// h_i = -log(e^{u_i} r_i) for r_i > 0, h_i = -u_i for r_i = 0 (ideal vertices
// use the zero-height reference horosphere of the base metric, so
// u_i = h_i(m, 0) - h_i(m, u) holds for every vertex).
HeightVector heights(const DecoratedMetric& m, const std::vector<double>& u);

// Truncated hyperbolic length of an edge between the vertex hyperplanes
// (eps = 1) or horospheres (eps = 0) of its endpoints. Solves
//   e^lambda + eps_i eps_j e^{-lambda}
//     = l^2 e^{h_i + h_j} - eps_i e^{h_j - h_i} - eps_j e^{h_i - h_j},
// i.e. lambda = arcosh(rhs/2) when both ends are hyperideal (then cosh lambda
// equals the inversive distance of the two circles) and lambda = log(rhs)
// otherwise. Throws GeometryError when the right-hand side is out of range
// (non-disjoint circles).
double lambda_length(double l, double hi, double hj, int epsi, int epsj);

// Radius of the hyper- or horosphere with height h: solves
// e^h = (e^rho - eps e^{-rho}) / 2.
double hyperbolic_radius(double h, int eps);

// Milnor's Lobachevsky function, -integral_0^x log|2 sin t| dt: odd,
// pi-periodic, maximal at pi/6. Absolute accuracy around 1e-15.
double lobachevsky(double x);

// Truncated volume of the hyperbolic prism over a decorated euclidean
// triangle with corner angles theta and face-circle intersection angles
// alpha (both indexed by opposite corner): the solid bounded below by the
// hyperideal triangle, above by the horosphere at the apex, cut off at the
// vertex hyperplanes. Evaluates fifteen Lobachevsky terms built from
// half-sums of the angles at each corner. Requires theta to sum to pi within
// 1e-9 (throws GeometryError otherwise).
double horoprism_volume(const std::array<double, 3>& theta,
                        const std::array<double, 3>& alpha);

}  // namespace confsurf
