#pragma once

#include <limits>
#include <vector>

#include "confsurf/energy.hpp"

namespace confsurf {

struct SolverConfig {
    double residual_tol = 1e-10;  // sup norm of theta - Theta
    int max_iterations = 50;
    double armijo_slope = 1e-4;
    double backtrack = 0.5;
    int max_halvings = 40;
    double flip_trigger = 1e-10;     // relative margin below which an edge flips
    double flat_tol = 1e-12;         // relative flatness tolerance
    double divergence_guard = 50.0;  // sup norm of u at which we give up
};

struct IterationRecord {
    int iteration = 0;
    double residual = 0;
    double step = 0;  // accepted line search fraction
    int halvings = 0;
    double energy = 0;
    int flips = 0;  // flips performed after accepting the step
};

struct SolverReport {
    bool converged = false;
    bool admissible = true;  // targets satisfied the Gauss-Bonnet condition
    int iterations = 0;
    double residual = std::numeric_limits<double>::infinity();
    std::vector<IterationRecord> history;
    std::vector<FlipRecord> flips;  // all flips, including the initial pass

    std::vector<double> u;  // cumulative scale factors, normalized to mean zero
    Triangulation T;        // final weighted Delaunay combinatorics
    DecoratedMetric metric; // conformally changed metric on T (mean-zero gauge)
    std::vector<double> achieved;  // final cone angles
};

// Newton ascent of the energy with combinatorics kept weighted Delaunay by
// flipping after every accepted step. Per iteration: assemble gradient and
// Hessian, solve the mean-zero reduced system, backtracking line search on
// the value (a candidate step is rejected when the conformal change is
// infeasible or the Armijo bound fails; once the predicted gain falls below
// the value's rounding noise a step within noise is accepted), re-flip,
// repeat until the residual drops below tolerance. The returned scale
// factors are normalized to mean zero and the metric rescaled to match.
//
// A Gauss-Bonnet defect beyond 1e-12 only marks the report inadmissible (a
// maximum cannot exist, but the attempt is still made). Throws SolveError
// when iterates pass the divergence guard or the line search stalls.
SolverReport solve_prescribed_angles(const Triangulation& T, const DecoratedMetric& m,
                                     const std::vector<double>& Theta,
                                     const SolverConfig& cfg = {});

// Constant-curvature special case: targets 2 pi (2g - 2 + |V|) / |V| at every
// vertex (flat for genus 1).
SolverReport uniformize(const Triangulation& T, const DecoratedMetric& m,
                        const SolverConfig& cfg = {});

struct BoundaryReport {
    SolverReport double_report;     // ascent on the closed double
    std::vector<double> u;          // restricted to the disk's vertices
    DecoratedMetric metric;         // changed metric on the disk triangulation
    std::vector<double> achieved;   // cone angles of the disk metric
};

// Prescribed boundary angle sums on a triangulated disk: solves on the closed
// double with doubled boundary targets and flat (2 pi) interior targets, then
// re-anchors the answer to the doubled input combinatorics with a flip-free
// Newton polish (the ascent's own u tracks whatever combinatorics its flips
// produced), checks the solution is mirror-symmetric (within 1e-9; a
// violation throws SolveError since uniqueness forces symmetry), restricts
// the scale factors to the disk and applies them to the disk triangulation,
// so `metric` and `achieved` describe the solved disk on the caller's
// triangulation. theta_boundary maps each boundary vertex id to its target;
// interior entries are ignored. Targets whose double violates the
// total-angle count throw SolveError.
BoundaryReport solve_boundary(const DiskTriangulation& disk, const DecoratedMetric& m,
                              const std::vector<double>& theta_boundary,
                              const SolverConfig& cfg = {});

struct FlowRecord {
    int step = 0;
    double dt = 0;
    double residual = 0;
    double energy = 0;
};

struct FlowReport {
    std::vector<FlowRecord> history;
    std::vector<double> u;
    Triangulation T;
    DecoratedMetric metric;
    double residual = std::numeric_limits<double>::infinity();
    bool reached_tolerance = false;
};

// Explicit Euler integration of du/dt = theta - Theta with a flip pass after
// every step. A step is accepted only if the energy does not decrease and the
// residual does not increase, both up to evaluation noise; otherwise dt
// halves (SolveError after max_halvings). dt creeps back up after
// consecutive accepted steps. Stops after `steps` accepted steps or when the
// residual reaches cfg.residual_tol.
FlowReport theta_flow(const Triangulation& T, const DecoratedMetric& m,
                      const std::vector<double>& Theta, double dt, int steps,
                      const SolverConfig& cfg = {});

// Sorted record of the conformal class invariant: one entry per non-flat edge
// of a weighted Delaunay pair, keyed by the (unordered) endpoint ids with the
// edge's truncated hyperbolic length. Metrics related by a conformal change
// produce equal records no matter which triangulation the flip algorithm
// chose. ideal_reference as in evaluate_energy.
struct EdgeInvariant {
    int v_min = 0, v_max = 0;
    double lambda = 0;

    friend bool operator<(const EdgeInvariant& a, const EdgeInvariant& b) {
        if (a.v_min != b.v_min) return a.v_min < b.v_min;
        if (a.v_max != b.v_max) return a.v_max < b.v_max;
        return a.lambda < b.lambda;
    }
};

std::vector<EdgeInvariant> conformal_invariant_record(
    const Triangulation& T, const DecoratedMetric& m,
    const std::vector<double>* ideal_reference = nullptr, double flat_tol = 1e-12);

}  // namespace confsurf
