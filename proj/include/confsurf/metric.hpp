#pragma once

#include <array>
#include <vector>

#include "confsurf/mesh.hpp"

namespace confsurf {

// Decorated piecewise-euclidean metric: a positive length per edge id and a
// nonnegative circle radius per vertex. Valid when every face satisfies the
// strict triangle inequalities and all vertex circles are pairwise disjoint
// along edges (length[e] > r_i + r_j; a loop at i needs length > 2 r_i).
struct DecoratedMetric {
    std::vector<double> length;  // indexed by edge id (retired ids keep stale values)
    std::vector<double> radius;  // indexed by vertex id
};

// Corner angles and per-vertex angle sums of a triangulated metric.
struct AngleData {
    std::vector<std::array<double, 3>> corner;  // per face, angle at corner c
    std::vector<double> vertex_sum;             // cone angle per vertex
};

// Interior angles of a euclidean triangle with side lengths indexed by the
// opposite corner: returns the angle at corner c opposite l[c]. Uses the
// half-angle arctangent form, which stays accurate for needle triangles.
// Throws GeometryError unless the strict triangle inequalities hold.
std::array<double, 3> corner_angles(const std::array<double, 3>& l);

// Side lengths / corner radii of face f, indexed by opposite corner.
std::array<double, 3> face_lengths(const Triangulation& T, const DecoratedMetric& m, int f);
std::array<double, 3> face_radii(const Triangulation& T, const DecoratedMetric& m, int f);

// Corner angles of every face plus the cone angle at every vertex (corners of
// self-glued faces count with multiplicity). Sum over all vertices is always
// pi * face count.
AngleData cone_angles(const Triangulation& T, const DecoratedMetric& m);
AngleData cone_angles(const DiskTriangulation& D, const DecoratedMetric& m);

// Inversive distance of the two vertex circles spanning an edge: > 1 for
// disjoint circles, 1 tangent, 0 orthogonal. Requires both radii positive.
double inversive_distance(double l, double ri, double rj);

// Edge ids whose vertex circles fail strict disjointness (empty means the
// decoration is hyperideal). Loops at i are checked as length > 2 r_i.
std::vector<int> hyperideality_violations(const Triangulation& T, const DecoratedMetric& m);

// Length of one conformally changed edge. The quadratic form keeps all terms
// positive for disjoint circles; for a loop at i it degenerates to e^{u_i} l.
// Throws InfeasibleScaleError when the squared result is not positive.
double scaled_edge_length(double l, double ri, double rj, double ui, double uj, bool loop);

// Conformal change of the decorated metric by logarithmic scale factors u:
// radii scale as e^{u_i} r_i, lengths by scaled_edge_length. Throws
// InfeasibleScaleError if any face of the result breaks a triangle
// inequality; the solver's line search relies on that signal.
DecoratedMetric conformal_apply(const Triangulation& T, const DecoratedMetric& m,
                                const std::vector<double>& u);
DecoratedMetric conformal_apply(const DiskTriangulation& D, const DecoratedMetric& m,
                                const std::vector<double>& u);

// Recovers the logarithmic scale factor u at each corner of a face from the
// original and changed decorated side data (lengths and radii indexed by
// opposite corner). Inverse of conformal_apply on a single face. Throws
// GeometryError when a side is orthogonal to its vertex circles (vanishing
// denominator).
std::array<double, 3> scale_from_triangles(const std::array<double, 3>& l,
                                           const std::array<double, 3>& r,
                                           const std::array<double, 3>& lt,
                                           const std::array<double, 3>& rt);

// (1/2pi) * sum(Theta) - (2g - 2 + |V|); zero exactly when the target angles
// are consistent with the total curvature of a genus g surface.
double gauss_bonnet_defect(const std::vector<double>& Theta, int genus, int num_vertices);

// Throws GeometryError naming the face if any face of (T, m) violates the
// strict triangle inequalities.
void check_triangle_inequalities(const Triangulation& T, const DecoratedMetric& m);

}  // namespace confsurf
