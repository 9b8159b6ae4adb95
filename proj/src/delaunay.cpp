#include "confsurf/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace confsurf {

namespace {

struct QuadGeometry {
    TrianglePowerData A, B;  // A = (i,j,k), B = (j,i,l); shared edge is side 2 of both
};

QuadGeometry quad_geometry(const DecoratedQuad& q) {
    QuadGeometry g;
    g.A = triangle_power({q.l_jk, q.l_ki, q.l_ij}, {q.r_i, q.r_j, q.r_k});
    g.B = triangle_power({q.l_il, q.l_lj, q.l_ij}, {q.r_j, q.r_i, q.r_l});
    return g;
}

}  // namespace

double quad_margin(const DecoratedQuad& q) {
    QuadGeometry g = quad_geometry(q);
    return g.A.dist[2] + g.B.dist[2];
}

double quad_alpha_sum(const DecoratedQuad& q) {
    QuadGeometry g = quad_geometry(q);
    return g.A.alpha[2] + g.B.alpha[2];
}

double quad_margin_scale(const DecoratedQuad& q) {
    QuadGeometry g = quad_geometry(q);
    return std::max({g.A.edge_radius[2], std::abs(g.A.dist[2]), std::abs(g.B.dist[2])});
}

double quad_flip_length(const DecoratedQuad& q) {
    // Common layout across the shared edge: i at the origin, j at (l_ij, 0),
    // k above the axis, l below.
    double l = q.l_ij;
    double xk = (l * l + q.l_ki * q.l_ki - q.l_jk * q.l_jk) / (2.0 * l);
    double xl = (l * l + q.l_il * q.l_il - q.l_lj * q.l_lj) / (2.0 * l);
    double yk_sq = (q.l_ki - xk) * (q.l_ki + xk);
    double yl_sq = (q.l_il - xl) * (q.l_il + xl);
    if (!(yk_sq > 0) || !(yl_sq > 0)) throw NotFlippableError("degenerate quad layout");
    double yk = std::sqrt(yk_sq);
    double yl = -std::sqrt(yl_sq);
    // The flipped faces (l,j,k) and (k,i,l) must both be positively oriented,
    // i.e. the quadrilateral k,i,l,j is strictly convex across the diagonal.
    double area_ljk = (l - xl) * (yk - yl) + yl * (xk - xl);
    double area_kil = -xk * (yl - yk) + yk * (xl - xk);
    if (!(area_ljk > 0) || !(area_kil > 0))
        throw NotFlippableError("flipped triangles would be inverted");
    return std::hypot(xk - xl, yk - yl);
}

DecoratedQuad edge_quad(const Triangulation& T, const DecoratedMetric& m, int e) {
    if (!T.edge_alive(e)) throw NotFlippableError("edge " + std::to_string(e) + " is not live");
    int h = T.edge_half_edge(e);
    int h2 = T.twin(h);
    int A = T.face_of(h), sA = T.side_of(h);
    int B = T.face_of(h2), sB = T.side_of(h2);
    DecoratedQuad q;
    q.l_ij = m.length[e];
    q.l_jk = m.length[T.edge_of(T.half_edge(A, (sA + 1) % 3))];
    q.l_ki = m.length[T.edge_of(T.half_edge(A, (sA + 2) % 3))];
    q.l_il = m.length[T.edge_of(T.half_edge(B, (sB + 1) % 3))];
    q.l_lj = m.length[T.edge_of(T.half_edge(B, (sB + 2) % 3))];
    q.r_i = m.radius[T.origin(h)];
    q.r_j = m.radius[T.origin(h2)];
    q.r_k = m.radius[T.corner_vertex(A, sA)];
    q.r_l = m.radius[T.corner_vertex(B, sB)];
    return q;
}

double local_delaunay_margin(const Triangulation& T, const DecoratedMetric& m, int e) {
    return quad_margin(edge_quad(T, m, e));
}

double flip_diagonal_length(const Triangulation& T, const DecoratedMetric& m, int e) {
    return quad_flip_length(edge_quad(T, m, e));
}

EdgeWeightReport edge_weight_report(const Triangulation& T, const DecoratedMetric& m,
                                    double flat_tol) {
    EdgeWeightReport report;
    report.flat_tol = flat_tol;
    report.edge.resize(T.edge_id_bound());
    for (int e : T.edges()) {
        QuadGeometry g = quad_geometry(edge_quad(T, m, e));
        EdgeWeightEntry& entry = report.edge[e];
        entry.alive = true;
        entry.alpha_sum = g.A.alpha[2] + g.B.alpha[2];
        entry.margin = g.A.dist[2] + g.B.dist[2];
        entry.weight = entry.margin / g.A.edge_radius[2];
        entry.scale = std::max({g.A.edge_radius[2], std::abs(g.A.dist[2]),
                                std::abs(g.B.dist[2])});
        entry.flat = std::abs(entry.margin) <= flat_tol * entry.scale;
    }
    return report;
}

std::vector<int> non_flat_edges(const EdgeWeightReport& report) {
    std::vector<int> out;
    for (size_t e = 0; e < report.edge.size(); ++e)
        if (report.edge[e].alive && !report.edge[e].flat) out.push_back(static_cast<int>(e));
    return out;
}

bool is_weighted_delaunay(const Triangulation& T, const DecoratedMetric& m, double tol) {
    for (int e : T.edges()) {
        DecoratedQuad q = edge_quad(T, m, e);
        if (quad_margin(q) < -tol * quad_margin_scale(q)) return false;
    }
    return true;
}

FlipResult flip_algorithm(Triangulation T, DecoratedMetric m, double trigger_tol,
                          double flat_tol) {
    std::set<int> queue;
    for (int e : T.edges()) queue.insert(e);

    std::vector<FlipRecord> log;
    const size_t flip_cap = 100 * static_cast<size_t>(T.edge_count());
    while (!queue.empty()) {
        int e = *queue.begin();
        queue.erase(queue.begin());
        if (!T.edge_alive(e)) continue;
        DecoratedQuad q = edge_quad(T, m, e);
        double margin = quad_margin(q);
        if (margin >= -trigger_tol * quad_margin_scale(q)) continue;

        double new_length = quad_flip_length(q);
        int h = T.edge_half_edge(e);
        int h2 = T.twin(h);
        std::array<int, 4> ring = {T.edge_of(T.next(h)), T.edge_of(T.next(T.next(h))),
                                   T.edge_of(T.next(h2)), T.edge_of(T.next(T.next(h2)))};
        int e_new = T.flip(e);
        m.length.resize(T.edge_id_bound(), 0.0);
        m.length[e_new] = new_length;
        log.push_back({e, e_new, new_length});
        if (log.size() > flip_cap)
            throw SolveError("flip sequence exceeded " + std::to_string(flip_cap) +
                             " flips without settling");
        queue.insert(e_new);
        for (int r : ring) queue.insert(r);
    }

    EdgeWeightReport report = edge_weight_report(T, m, flat_tol);
    return {std::move(T), std::move(m), std::move(report), std::move(log)};
}

}  // namespace confsurf
