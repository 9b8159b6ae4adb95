#pragma once

#include <array>
#include <utility>
#include <vector>

#include "confsurf/errors.hpp"

namespace confsurf {

// A side of a face. Side s is the side OPPOSITE corner s, i.e. it connects
// corners (s+1)%3 and (s+2)%3. This one convention is shared by the mesh, all
// per-edge angle data, and the file format.
struct SideRef {
    int face = -1;
    int side = -1;

    friend bool operator==(const SideRef& a, const SideRef& b) {
        return a.face == b.face && a.side == b.side;
    }
    friend bool operator<(const SideRef& a, const SideRef& b) {
        return a.face != b.face ? a.face < b.face : a.side < b.side;
    }
};

using Gluing = std::pair<SideRef, SideRef>;

// Half-edge mesh of a closed oriented triangulated surface with marked
// vertices. Self-gluings are allowed: a face may repeat vertices and an edge's
// endpoints may coincide, so all geometric bookkeeping is keyed on half-edges
// and corners, never on vertex pairs.
//
// Ids are stable: vertices, faces and half-edges never change id. Edge classes
// (twin pairs) get integer ids too; a diagonal flip retires the flipped edge's
// id and allocates a fresh one, so flip logs are unambiguous.
class Triangulation {
public:
    // Builds a closed surface from per-face corner triples and a perfect
    // matching of sides. Glued sides must be traversed oppositely (origin of
    // one is the destination of the other). Throws MeshError on unpaired or
    // doubly paired sides, orientation mismatch, broken vertex links, or a
    // non-integer genus.
    static Triangulation build(int num_vertices,
                               const std::vector<std::array<int, 3>>& face_corners,
                               const std::vector<Gluing>& gluings);

    int vertex_count() const { return num_vertices_; }
    int face_count() const { return static_cast<int>(face_side_.size()); }
    int half_edge_count() const { return static_cast<int>(next_.size()); }
    int edge_count() const { return live_edges_; }
    int genus() const { return genus_; }

    // Half-edge accessors. A half-edge runs from origin to dest inside its
    // face; next() advances counterclockwise around the face.
    int next(int h) const { return next_[h]; }
    int twin(int h) const { return twin_[h]; }
    int origin(int h) const { return origin_[h]; }
    int dest(int h) const { return origin_[next_[h]]; }
    int face_of(int h) const { return face_[h]; }
    int side_of(int h) const { return side_[h]; }
    int edge_of(int h) const { return edge_[h]; }

    // The half-edge at side s of face f (opposite corner s).
    int half_edge(int f, int s) const { return face_side_[f][s]; }
    // Vertex sitting at corner c of face f.
    int corner_vertex(int f, int c) const {
        return origin_[face_side_[f][(c + 2) % 3]];
    }
    std::array<int, 3> corners(int f) const {
        return {corner_vertex(f, 0), corner_vertex(f, 1), corner_vertex(f, 2)};
    }

    // Edge ids in [0, edge_id_bound()); retired ids map to no half-edge.
    int edge_id_bound() const { return static_cast<int>(edge_half_edge_.size()); }
    bool edge_alive(int e) const {
        return e >= 0 && e < edge_id_bound() && edge_half_edge_[e] >= 0;
    }
    int edge_half_edge(int e) const { return edge_half_edge_[e]; }
    std::vector<int> edges() const;  // live edge ids, ascending
    std::pair<int, int> edge_endpoints(int e) const;
    bool is_loop(int e) const {
        int h = edge_half_edge_[e];
        return origin_[h] == dest(h);
    }

    // One outgoing half-edge per vertex; number of corners at a vertex.
    int vertex_half_edge(int v) const { return vertex_half_edge_[v]; }
    int degree(int v) const;

    // Diagonal flip of edge e. Requires the two half-edges of e to lie in
    // distinct faces (throws NotFlippableError otherwise). The four outer
    // sides keep their edge ids; the diagonal's id is retired and a fresh id
    // is returned for the new diagonal. Vertex set, face ids and genus are
    // unchanged.
    int flip(int e);

    int euler_characteristic() const {
        return num_vertices_ - live_edges_ + face_count();
    }

    // Full structural self-check (next^3 = id, twin involution without fixed
    // points, side/corner tables consistent, vertex links are single cycles,
    // Euler relation). Throws MeshError on violation.
    void check_valid() const;

private:
    int num_vertices_ = 0;
    int genus_ = 0;
    int live_edges_ = 0;
    std::vector<int> next_, twin_, origin_, face_, side_, edge_;
    std::vector<std::array<int, 3>> face_side_;
    std::vector<int> edge_half_edge_;
    std::vector<int> vertex_half_edge_;
};

// A triangulated surface with boundary (typically a disk), kept as plain face
// and gluing lists: boundary sides have no twin, so the closed half-edge
// structure above does not apply. Edge ids are assigned on construction,
// shared by glued side pairs.
struct DiskTriangulation {
    int num_vertices = 0;
    std::vector<std::array<int, 3>> faces;
    std::vector<Gluing> gluings;    // interior side pairs
    std::vector<SideRef> boundary;  // unpaired sides

    // Derived on build():
    std::vector<std::array<int, 3>> side_edge;  // edge id per (face, side)
    int num_edges = 0;
    std::vector<char> on_boundary;          // per vertex
    std::vector<std::pair<int, int>> edge_vertices;  // endpoints per edge

    // Validates: all side references in range, every side in exactly one
    // gluing or boundary record, gluings orientation-consistent, boundary
    // sides form disjoint closed cycles.
    static DiskTriangulation build(int num_vertices,
                                   std::vector<std::array<int, 3>> faces,
                                   std::vector<Gluing> gluings,
                                   std::vector<SideRef> boundary);

    int side_edge_id(const SideRef& s) const { return side_edge[s.face][s.side]; }
};

// Closed double of a surface with boundary: a mirror copy of every face is
// glued along the boundary. The orientation-reversing involution swaps each
// face with its mirror and fixes the boundary edges as edge classes.
struct DoubledSurface {
    Triangulation surface;
    std::vector<int> vertex_mirror;  // involution on vertices of the double
    std::vector<int> face_mirror;    // involution on faces
    int original_vertices = 0;       // disk vertices keep ids [0, original_vertices)
    int original_faces = 0;          // disk faces keep ids [0, original_faces)
    std::vector<int> disk_edge_to_double;  // disk edge id -> edge id in the double
    std::vector<int> double_edge_to_disk;  // edge of the double -> disk edge carrying it
};

DoubledSurface double_surface(const DiskTriangulation& disk);

}  // namespace confsurf
