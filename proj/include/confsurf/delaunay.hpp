#pragma once

#include <vector>

#include "confsurf/metric.hpp"
#include "confsurf/power.hpp"

namespace confsurf {

// Two decorated triangles sharing the edge ij: triangle A = (i, j, k) and
// triangle B = (j, i, l). All lengths positive; the shared length appears
// once. The two triangles may be the same face of a surface; the data is
// purely local so that never matters.
struct DecoratedQuad {
    double l_ij, l_jk, l_ki;  // triangle A sides
    double l_il, l_lj;        // triangle B remaining sides
    double r_i, r_j, r_k, r_l;
};

// Signed weighted Delaunay margin d_ij^k + d_ij^l of the shared edge:
// nonnegative exactly when the edge is weighted Delaunay.
double quad_margin(const DecoratedQuad& q);

// Sum alpha_ij^k + alpha_ij^l of the face-circle intersection angles at the
// shared edge; at most pi exactly when the margin is nonnegative.
double quad_alpha_sum(const DecoratedQuad& q);

// Natural magnitude of the quantities entering the margin (used to make
// flatness and flip tests relative): max(r_ij, |d_ij^k|, |d_ij^l|).
double quad_margin_scale(const DecoratedQuad& q);

// Length of the other diagonal kl when both triangles are laid out in a
// common plane across ij. Throws NotFlippableError when the flipped pair of
// triangles would be degenerate or inverted (non-convex quadrilateral).
double quad_flip_length(const DecoratedQuad& q);

// Gathers the quad of edge e from the surface; i = origin of e's
// representative half-edge.
DecoratedQuad edge_quad(const Triangulation& T, const DecoratedMetric& m, int e);

double local_delaunay_margin(const Triangulation& T, const DecoratedMetric& m, int e);
double flip_diagonal_length(const Triangulation& T, const DecoratedMetric& m, int e);

struct EdgeWeightEntry {
    bool alive = false;
    double alpha_sum = 0;  // alpha_ij^k + alpha_ij^l
    double margin = 0;     // d_ij^k + d_ij^l
    double weight = 0;     // cot(alpha_ij^k) + cot(alpha_ij^l)
    double scale = 0;      // local magnitude the tolerances are relative to
    bool flat = false;     // |margin| within flatness tolerance of zero
};

// Per-edge Delaunay diagnostics, indexed by edge id.
struct EdgeWeightReport {
    std::vector<EdgeWeightEntry> edge;
    double flat_tol = 1e-12;  // relative flatness tolerance used
};

EdgeWeightReport edge_weight_report(const Triangulation& T, const DecoratedMetric& m,
                                    double flat_tol = 1e-12);

// Edges with positive cotan weight: the 1-skeleton of the underlying
// tessellation. Flat edges are interior to tessellation cells, so this set
// does not depend on which triangular refinement the flip algorithm returned.
std::vector<int> non_flat_edges(const EdgeWeightReport& report);

// All margins >= -tol * local scale.
bool is_weighted_delaunay(const Triangulation& T, const DecoratedMetric& m,
                          double tol = 1e-9);

struct FlipRecord {
    int old_edge = -1;
    int new_edge = -1;
    double new_length = 0;
};

struct FlipResult {
    Triangulation T;
    DecoratedMetric m;
    EdgeWeightReport report;
    std::vector<FlipRecord> log;
};

// Flips every edge whose margin is below -trigger_tol * local scale until none
// remains, processing candidates in ascending edge id order and re-queueing
// the four sides of each flipped quad. The metric is carried along: surviving
// edges keep their lengths, each new diagonal gets its layout length, radii
// never change. Throws SolveError if the number of flips exceeds
// 100 * edge count (termination guard) and NotFlippableError if a violating
// edge cannot be flipped (geometrically impossible for a valid input; kept as
// a defensive check).
FlipResult flip_algorithm(Triangulation T, DecoratedMetric m,
                          double trigger_tol = 1e-10, double flat_tol = 1e-12);

}  // namespace confsurf
