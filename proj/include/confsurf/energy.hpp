#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "confsurf/delaunay.hpp"
#include "confsurf/hyperbolic.hpp"
#include "confsurf/metric.hpp"

namespace confsurf {

struct EnergyRequest {
    bool value = true;
    bool gradient = true;
    bool hessian = true;
};

// One evaluation of the concave energy driving the conformal mapping solvers,
// at scale factors u relative to the metric passed in. The triangulation must
// carry a weighted Delaunay metric after the conformal change (the caller
// runs the flip algorithm first).
//
//   value    = -2 sum_faces volume + sum_i (Theta_i - theta_i) h_i
//              + sum_edges (pi - alpha_ij) lambda_ij
//   gradient = theta - Theta           (ascent direction in u)
//   hessian  = d theta / d u: for every non-loop edge ij with margin m_ij,
//              H_ij += m_ij / l_ij, H_ii and H_jj -= m_ij / l_ij.
//
// The Hessian is negative semidefinite with the constants in its kernel; its
// entries need no hyperbolic quantities. The value does: heights, lambda
// lengths and prism volumes, summed in fixed id order.
struct EnergyEvaluation {
    double value = 0;
    Eigen::VectorXd gradient;
    Eigen::SparseMatrix<double> hessian;
    bool has_value = false, has_gradient = false, has_hessian = false;

    AngleData angles;
    EdgeWeightReport report;
    Triangulation triangulation;  // the combinatorics the evaluation used
};

// ideal_reference: optional per-vertex offsets added to u for the heights of
// ideal (radius zero) vertices only, so values stay comparable when the
// caller re-bases the metric between Newton steps (pass the cumulative scale
// factors). Has no effect on gradient or hessian, nor on surfaces whose radii
// are all positive.
//
// Throws NonDelaunayError when any edge margin after the conformal change is
// below -1e-9 relative to its local scale, and InfeasibleScaleError when the
// change itself is not realizable.
EnergyEvaluation evaluate_energy(const Triangulation& T, const DecoratedMetric& m,
                                 const std::vector<double>& u,
                                 const std::vector<double>& Theta,
                                 const EnergyRequest& want = {},
                                 const std::vector<double>* ideal_reference = nullptr);

// Predicted value change under a uniform shift of scale factors,
// value(u - c*1) - value(u) = -c (2 pi (2g - 2 + |V|) - sum Theta): zero
// exactly for targets satisfying the Gauss-Bonnet condition.
double shift_prediction(const std::vector<double>& Theta, int genus, int num_vertices,
                        double c);

}  // namespace confsurf
