#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "confsurf/metric.hpp"

namespace confsurf {

// Triangulation-with-lengths in the generic form the planar layout consumes:
// faces, per-side lengths, and for every (face, side) the neighboring
// (face, side) or -1 where the layout must not cross (boundary or cut edge).
struct LayoutInput {
    std::vector<std::array<int, 3>> faces;  // corner vertex ids, for reporting
    std::vector<std::array<double, 3>> side_length;
    std::vector<std::array<int, 3>> neighbor_face;
    std::vector<std::array<int, 3>> neighbor_side;
};

struct LayoutResult {
    // Plane position of every corner; seams along cut/boundary edges are
    // duplicated since corners of distinct faces get independent copies.
    std::vector<std::array<Eigen::Vector2d, 3>> corner;
    double max_length_error = 0;  // placed side lengths vs input
    double max_seam_gap = 0;      // endpoint mismatch across non-tree crossable edges
};

// Breadth-first isometric placement: face 0 goes into canonical position
// (corner 0 at the origin, corner 1 on the positive x-axis, corner 2 above),
// every further face is placed across an already placed side. Crossable edges
// not used by the search tree are checked for consistency and reported via
// max_seam_gap; a flat metric cut to a disk yields gaps at rounding level.
// Throws GeometryError if a face violates the triangle inequalities and
// MeshError if the crossable adjacency is not connected.
LayoutResult plan_layout(const LayoutInput& input);

// Closed surface: crossings blocked on the given cut edges. The cut must make
// the crossable graph simply connected for the seam gaps to vanish; callers
// see any failure in max_seam_gap.
LayoutInput layout_input(const Triangulation& T, const DecoratedMetric& m,
                         const std::vector<int>& cut_edges);

// Disk: boundary sides are never crossed; no cut needed.
LayoutInput layout_input(const DiskTriangulation& D, const DecoratedMetric& m);

}  // namespace confsurf
