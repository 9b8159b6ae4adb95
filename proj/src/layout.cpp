#include "confsurf/layout.hpp"

#include <cmath>
#include <deque>
#include <set>
#include <string>

namespace confsurf {

namespace {

// Apex position of a triangle with base from p to q (input base length L),
// apex distance la from the base start and lb from the base end, placed to
// the left of p -> q.
Eigen::Vector2d place_apex(const Eigen::Vector2d& p, const Eigen::Vector2d& q, double L,
                           double la, double lb) {
    double x = (L * L + la * la - lb * lb) / (2.0 * L);
    double ysq = (la - x) * (la + x);
    if (!(L > 0) || !(ysq > 0)) throw GeometryError("degenerate triangle in layout");
    Eigen::Vector2d e = (q - p) / (q - p).norm();
    Eigen::Vector2d n(-e.y(), e.x());
    return p + x * e + std::sqrt(ysq) * n;
}

}  // namespace

LayoutResult plan_layout(const LayoutInput& input) {
    const int F = static_cast<int>(input.faces.size());
    if (F == 0) throw MeshError("layout needs at least one face");
    if (input.side_length.size() != input.faces.size() ||
        input.neighbor_face.size() != input.faces.size() ||
        input.neighbor_side.size() != input.faces.size())
        throw MeshError("layout input tables have mismatched sizes");
    for (int f = 0; f < F; ++f)
        for (int s = 0; s < 3; ++s) {
            int nf = input.neighbor_face[f][s];
            if (nf == -1) continue;
            int ns = input.neighbor_side[f][s];
            if (nf < 0 || nf >= F || ns < 0 || ns > 2 ||
                input.neighbor_face[nf][ns] != f || input.neighbor_side[nf][ns] != s)
                throw MeshError("layout adjacency is not symmetric");
        }

    LayoutResult out;
    out.corner.resize(F);
    std::vector<char> placed(F, 0);
    std::vector<std::array<char, 3>> tree(F, {0, 0, 0});

    {
        const auto& l = input.side_length[0];
        out.corner[0][0] = {0.0, 0.0};
        out.corner[0][1] = {l[2], 0.0};
        out.corner[0][2] = place_apex(out.corner[0][0], out.corner[0][1], l[2], l[1], l[0]);
        placed[0] = 1;
    }
    std::deque<int> queue = {0};
    int reached = 1;
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        for (int s = 0; s < 3; ++s) {
            int nf = input.neighbor_face[f][s];
            if (nf == -1 || placed[nf]) continue;
            int ns = input.neighbor_side[f][s];
            // The shared side is traversed oppositely by the two faces, so
            // the neighbor's first corner lands on our second.
            const Eigen::Vector2d& p = out.corner[f][(s + 2) % 3];
            const Eigen::Vector2d& q = out.corner[f][(s + 1) % 3];
            out.corner[nf][(ns + 1) % 3] = p;
            out.corner[nf][(ns + 2) % 3] = q;
            out.corner[nf][ns] =
                place_apex(p, q, input.side_length[nf][ns],
                           input.side_length[nf][(ns + 2) % 3],
                           input.side_length[nf][(ns + 1) % 3]);
            placed[nf] = 1;
            tree[f][s] = tree[nf][ns] = 1;
            ++reached;
            queue.push_back(nf);
        }
    }
    if (reached != F) throw MeshError("crossable faces are not connected");

    for (int f = 0; f < F; ++f)
        for (int s = 0; s < 3; ++s) {
            double d = (out.corner[f][(s + 2) % 3] - out.corner[f][(s + 1) % 3]).norm();
            out.max_length_error =
                std::max(out.max_length_error, std::abs(d - input.side_length[f][s]));
            int nf = input.neighbor_face[f][s];
            if (nf == -1 || tree[f][s]) continue;
            int ns = input.neighbor_side[f][s];
            if (std::make_pair(nf, ns) < std::make_pair(f, s)) continue;  // count once
            double gap = std::max(
                (out.corner[f][(s + 1) % 3] - out.corner[nf][(ns + 2) % 3]).norm(),
                (out.corner[f][(s + 2) % 3] - out.corner[nf][(ns + 1) % 3]).norm());
            out.max_seam_gap = std::max(out.max_seam_gap, gap);
        }
    return out;
}

LayoutInput layout_input(const Triangulation& T, const DecoratedMetric& m,
                         const std::vector<int>& cut_edges) {
    std::set<int> cut(cut_edges.begin(), cut_edges.end());
    for (int e : cut)
        if (!T.edge_alive(e))
            throw MeshError("cut edge " + std::to_string(e) + " is not live");
    LayoutInput in;
    const int F = T.face_count();
    in.faces.resize(F);
    in.side_length.resize(F);
    in.neighbor_face.assign(F, {-1, -1, -1});
    in.neighbor_side.assign(F, {-1, -1, -1});
    for (int f = 0; f < F; ++f) {
        in.faces[f] = T.corners(f);
        for (int s = 0; s < 3; ++s) {
            int h = T.half_edge(f, s);
            in.side_length[f][s] = m.length[T.edge_of(h)];
            if (cut.count(T.edge_of(h))) continue;
            int h2 = T.twin(h);
            in.neighbor_face[f][s] = T.face_of(h2);
            in.neighbor_side[f][s] = T.side_of(h2);
        }
    }
    return in;
}

LayoutInput layout_input(const DiskTriangulation& D, const DecoratedMetric& m) {
    LayoutInput in;
    const int F = static_cast<int>(D.faces.size());
    in.faces = D.faces;
    in.side_length.resize(F);
    in.neighbor_face.assign(F, {-1, -1, -1});
    in.neighbor_side.assign(F, {-1, -1, -1});
    for (int f = 0; f < F; ++f)
        for (int s = 0; s < 3; ++s) in.side_length[f][s] = m.length[D.side_edge[f][s]];
    for (const auto& [sa, sb] : D.gluings) {
        in.neighbor_face[sa.face][sa.side] = sb.face;
        in.neighbor_side[sa.face][sa.side] = sb.side;
        in.neighbor_face[sb.face][sb.side] = sa.face;
        in.neighbor_side[sb.face][sb.side] = sa.side;
    }
    return in;
}

}  // namespace confsurf
