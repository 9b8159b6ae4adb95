#include "confsurf/metric.hpp"

#include <cmath>
#include <string>

namespace confsurf {

namespace {

bool triangle_ok(const std::array<double, 3>& l) {
    return l[0] > 0 && l[1] > 0 && l[2] > 0 && l[1] + l[2] > l[0] && l[2] + l[0] > l[1] &&
           l[0] + l[1] > l[2];
}

}  // namespace

std::array<double, 3> corner_angles(const std::array<double, 3>& l) {
    if (!triangle_ok(l))
        throw GeometryError("side lengths " + std::to_string(l[0]) + ", " +
                            std::to_string(l[1]) + ", " + std::to_string(l[2]) +
                            " violate a triangle inequality");
    double s = 0.5 * (l[0] + l[1] + l[2]);
    std::array<double, 3> d = {s - l[0], s - l[1], s - l[2]};
    std::array<double, 3> angle;
    for (int c = 0; c < 3; ++c) {
        // tan(angle_c / 2) = sqrt(d_a d_b / (s d_c)) with {a,b} the other sides
        int a = (c + 1) % 3, b = (c + 2) % 3;
        angle[c] = 2.0 * std::atan2(std::sqrt(d[a] * d[b]), std::sqrt(s * d[c]));
    }
    return angle;
}

std::array<double, 3> face_lengths(const Triangulation& T, const DecoratedMetric& m, int f) {
    return {m.length[T.edge_of(T.half_edge(f, 0))], m.length[T.edge_of(T.half_edge(f, 1))],
            m.length[T.edge_of(T.half_edge(f, 2))]};
}

std::array<double, 3> face_radii(const Triangulation& T, const DecoratedMetric& m, int f) {
    return {m.radius[T.corner_vertex(f, 0)], m.radius[T.corner_vertex(f, 1)],
            m.radius[T.corner_vertex(f, 2)]};
}

AngleData cone_angles(const Triangulation& T, const DecoratedMetric& m) {
    AngleData out;
    out.corner.resize(T.face_count());
    out.vertex_sum.assign(T.vertex_count(), 0.0);
    for (int f = 0; f < T.face_count(); ++f) {
        out.corner[f] = corner_angles(face_lengths(T, m, f));
        for (int c = 0; c < 3; ++c) out.vertex_sum[T.corner_vertex(f, c)] += out.corner[f][c];
    }
    return out;
}

AngleData cone_angles(const DiskTriangulation& D, const DecoratedMetric& m) {
    AngleData out;
    out.corner.resize(D.faces.size());
    out.vertex_sum.assign(D.num_vertices, 0.0);
    for (size_t f = 0; f < D.faces.size(); ++f) {
        std::array<double, 3> l = {m.length[D.side_edge[f][0]], m.length[D.side_edge[f][1]],
                                   m.length[D.side_edge[f][2]]};
        out.corner[f] = corner_angles(l);
        for (int c = 0; c < 3; ++c) out.vertex_sum[D.faces[f][c]] += out.corner[f][c];
    }
    return out;
}

double inversive_distance(double l, double ri, double rj) {
    if (ri <= 0 || rj <= 0)
        throw GeometryError("inversive distance needs positive radii");
    return (l * l - ri * ri - rj * rj) / (2.0 * ri * rj);
}

std::vector<int> hyperideality_violations(const Triangulation& T, const DecoratedMetric& m) {
    std::vector<int> bad;
    for (int e : T.edges()) {
        auto [i, j] = T.edge_endpoints(e);
        double need = T.is_loop(e) ? 2.0 * m.radius[i] : m.radius[i] + m.radius[j];
        if (!(m.length[e] > need)) bad.push_back(e);
    }
    return bad;
}

double scaled_edge_length(double l, double ri, double rj, double ui, double uj, bool loop) {
    if (loop) return std::exp(ui) * l;
    // All three terms are positive for disjoint circles, so the sum cannot
    // cancel: l^2 - ri^2 - rj^2 > 0 whenever l > ri + rj.
    double sq = std::exp(2.0 * ui) * ri * ri + std::exp(ui + uj) * (l * l - ri * ri - rj * rj) +
                std::exp(2.0 * uj) * rj * rj;
    if (!(sq > 0))
        throw InfeasibleScaleError("conformal change collapses an edge");
    return std::sqrt(sq);
}

DecoratedMetric conformal_apply(const Triangulation& T, const DecoratedMetric& m,
                                const std::vector<double>& u) {
    if (static_cast<int>(u.size()) != T.vertex_count())
        throw GeometryError("scale vector has wrong size");
    DecoratedMetric out;
    out.radius.resize(T.vertex_count());
    for (int v = 0; v < T.vertex_count(); ++v) out.radius[v] = std::exp(u[v]) * m.radius[v];
    out.length = m.length;
    out.length.resize(T.edge_id_bound(), 0.0);
    for (int e : T.edges()) {
        auto [i, j] = T.edge_endpoints(e);
        out.length[e] =
            scaled_edge_length(m.length[e], m.radius[i], m.radius[j], u[i], u[j], T.is_loop(e));
    }
    for (int f = 0; f < T.face_count(); ++f)
        if (!triangle_ok(face_lengths(T, out, f)))
            throw InfeasibleScaleError("conformal change degenerates face " + std::to_string(f));
    return out;
}

DecoratedMetric conformal_apply(const DiskTriangulation& D, const DecoratedMetric& m,
                                const std::vector<double>& u) {
    if (static_cast<int>(u.size()) != D.num_vertices)
        throw GeometryError("scale vector has wrong size");
    DecoratedMetric out;
    out.radius.resize(D.num_vertices);
    for (int v = 0; v < D.num_vertices; ++v) out.radius[v] = std::exp(u[v]) * m.radius[v];
    out.length.resize(D.num_edges);
    for (int e = 0; e < D.num_edges; ++e) {
        auto [i, j] = D.edge_vertices[e];
        out.length[e] =
            scaled_edge_length(m.length[e], m.radius[i], m.radius[j], u[i], u[j], i == j);
    }
    for (size_t f = 0; f < D.faces.size(); ++f) {
        std::array<double, 3> l = {out.length[D.side_edge[f][0]], out.length[D.side_edge[f][1]],
                                   out.length[D.side_edge[f][2]]};
        if (!triangle_ok(l))
            throw InfeasibleScaleError("conformal change degenerates face " + std::to_string(f));
    }
    return out;
}

std::array<double, 3> scale_from_triangles(const std::array<double, 3>& l,
                                           const std::array<double, 3>& r,
                                           const std::array<double, 3>& lt,
                                           const std::array<double, 3>& rt) {
    // D_e = l_e^2 - r_a^2 - r_b^2 transforms as D~_e = e^{u_a + u_b} D_e, so
    // ratios of the D across the two triangles isolate e^{2u} per corner.
    std::array<double, 3> D, Dt;
    for (int e = 0; e < 3; ++e) {
        int a = (e + 1) % 3, b = (e + 2) % 3;
        D[e] = l[e] * l[e] - r[a] * r[a] - r[b] * r[b];
        Dt[e] = lt[e] * lt[e] - rt[a] * rt[a] - rt[b] * rt[b];
        if (D[e] == 0 || Dt[e] == 0)
            throw GeometryError("orthogonal circles leave the corner scale undetermined");
    }
    std::array<double, 3> u;
    for (int c = 0; c < 3; ++c) {
        int a = (c + 1) % 3, b = (c + 2) % 3;
        double ratio = (Dt[a] * Dt[b] * D[c]) / (D[a] * D[b] * Dt[c]);
        if (!(ratio > 0))
            throw GeometryError("triangles are not conformally related");
        u[c] = 0.5 * std::log(ratio);
    }
    return u;
}

double gauss_bonnet_defect(const std::vector<double>& Theta, int genus, int num_vertices) {
    double sum = 0.0;
    for (double t : Theta) sum += t;
    return sum / (2.0 * M_PI) - (2.0 * genus - 2.0 + num_vertices);
}

void check_triangle_inequalities(const Triangulation& T, const DecoratedMetric& m) {
    for (int f = 0; f < T.face_count(); ++f)
        if (!triangle_ok(face_lengths(T, m, f)))
            throw GeometryError("face " + std::to_string(f) +
                                " violates a triangle inequality");
}

}  // namespace confsurf
