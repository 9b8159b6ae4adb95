#pragma once
// Instance generators and independent numeric oracles shared by the tests.
// Everything here is built from plane geometry or textbook quadrature, never
// from the code under test, so the checks stay meaningful.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "confsurf/delaunay.hpp"
#include "confsurf/mesh.hpp"
#include "confsurf/metric.hpp"

namespace helpers {

using namespace confsurf;

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
}

struct ClosedInstance {
    Triangulation T;
    DecoratedMetric m;
};

struct DiskInstance {
    DiskTriangulation disk;
    DecoratedMetric m;
};

// Torus with a single vertex and two faces glued side to side: side s of face
// 0 meets side s of face 1 and carries edge s with length l[s]. l = (1, 1,
// sqrt 2) is the flat unit square torus.
inline ClosedInstance one_vertex_torus(const std::array<double, 3>& l, double r) {
    std::vector<std::array<int, 3>> faces = {{0, 0, 0}, {0, 0, 0}};
    std::vector<Gluing> gluings;
    for (int s = 0; s < 3; ++s) gluings.push_back({{0, s}, {1, s}});
    ClosedInstance out{Triangulation::build(1, faces, gluings), {}};
    out.m.length = {l[0], l[1], l[2]};
    out.m.radius = {r};
    return out;
}

// Flat unit square torus subdivided into an nx-by-ny grid, every cell split
// along its up-right diagonal. All cone angles are 2 pi. Edge ids appear in
// cell order as (diagonal, horizontal, vertical).
inline ClosedInstance grid_torus(int nx, int ny) {
    auto vid = [&](int i, int j) { return (i % nx + nx) % nx + nx * ((j % ny + ny) % ny); };
    auto cell = [&](int i, int j) { return vid(i, j); };
    std::vector<std::array<int, 3>> faces(2 * nx * ny);
    std::vector<Gluing> gluings;
    std::vector<double> length;
    double dx = 1.0 / nx, dy = 1.0 / ny, diag = std::hypot(dx, dy);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            faces[2 * cell(i, j)] = {a, b, c};
            faces[2 * cell(i, j) + 1] = {a, c, d};
        }
    auto f0 = [&](int i, int j) { return 2 * cell(i, j); };
    auto f1 = [&](int i, int j) { return 2 * cell(i, j) + 1; };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            gluings.push_back({{f0(i, j), 1}, {f1(i, j), 2}});
            length.push_back(diag);
            gluings.push_back({{f0(i, j), 2}, {f1(i, (j + ny - 1) % ny), 0}});
            length.push_back(dx);
            gluings.push_back({{f0(i, j), 0}, {f1((i + 1) % nx, j), 1}});
            length.push_back(dy);
        }
    ClosedInstance out{Triangulation::build(nx * ny, faces, gluings), {}};
    out.m.length = length;
    out.m.radius.assign(nx * ny, 0.0);
    return out;
}

// Fan triangulation of a polygon given by its corner positions: faces
// (0, j+1, j+2) for j = 0 .. k-3, all vertices on the boundary.
inline DiskInstance fan_disk(const std::vector<std::array<double, 2>>& p, double r = 0.0) {
    int k = static_cast<int>(p.size());
    std::vector<std::array<int, 3>> faces;
    for (int j = 0; j + 2 < k; ++j) faces.push_back({0, j + 1, j + 2});
    std::vector<Gluing> gluings;
    for (int j = 0; j + 3 < k; ++j) gluings.push_back({{j, 1}, {j + 1, 2}});
    std::vector<SideRef> boundary;
    boundary.push_back({0, 2});
    for (int j = 0; j + 2 < k; ++j) boundary.push_back({j, 0});
    boundary.push_back({k - 3, 1});
    DiskInstance out{DiskTriangulation::build(k, faces, std::move(gluings), std::move(boundary)),
                     {}};
    auto dist = [&](int a, int b) { return std::hypot(p[a][0] - p[b][0], p[a][1] - p[b][1]); };
    out.m.length.assign(out.disk.num_edges, 0.0);
    for (int f = 0; f < static_cast<int>(out.disk.faces.size()); ++f)
        for (int s = 0; s < 3; ++s) {
            const auto& c = out.disk.faces[f];
            out.m.length[out.disk.side_edge[f][s]] = dist(c[(s + 1) % 3], c[(s + 2) % 3]);
        }
    out.m.radius.assign(k, r);
    return out;
}

inline std::vector<std::array<double, 2>> regular_polygon(int k, double R = 1.0) {
    std::vector<std::array<double, 2>> p(k);
    for (int i = 0; i < k; ++i)
        p[i] = {R * std::cos(2 * M_PI * i / k), R * std::sin(2 * M_PI * i / k)};
    return p;
}

// Disk with one interior vertex: center 0 joined to a ring 1 .. k at distance
// R, ring edges on the boundary. Flat at the center when k = 6 (equilateral).
inline DiskInstance wheel_disk(int k, double R = 1.0, double r = 0.0) {
    std::vector<std::array<int, 3>> faces;
    std::vector<Gluing> gluings;
    std::vector<SideRef> boundary;
    for (int i = 0; i < k; ++i) {
        faces.push_back({0, 1 + i, 1 + (i + 1) % k});
        gluings.push_back({{i, 1}, {(i + 1) % k, 2}});
        boundary.push_back({i, 0});
    }
    DiskInstance out{DiskTriangulation::build(k + 1, faces, std::move(gluings), std::move(boundary)),
                     {}};
    double ring = 2.0 * R * std::sin(M_PI / k);
    out.m.length.assign(out.disk.num_edges, 0.0);
    for (int i = 0; i < k; ++i) {
        out.m.length[out.disk.side_edge[i][0]] = ring;
        out.m.length[out.disk.side_edge[i][1]] = R;
        out.m.length[out.disk.side_edge[i][2]] = R;
    }
    out.m.radius.assign(k + 1, r);
    return out;
}

// Closed double of a disk instance, with lengths and radii transported along
// the mirror identifications.
inline ClosedInstance double_instance(const DiskInstance& d) {
    DoubledSurface ds = double_surface(d.disk);
    DecoratedMetric md;
    md.length.assign(ds.surface.edge_id_bound(), 0.0);
    for (int e = 0; e < ds.surface.edge_id_bound(); ++e)
        if (ds.surface.edge_alive(e)) md.length[e] = d.m.length[ds.double_edge_to_disk[e]];
    md.radius.resize(ds.surface.vertex_count());
    for (int v = 0; v < ds.surface.vertex_count(); ++v)
        md.radius[v] = d.m.radius[v < ds.original_vertices ? v : ds.vertex_mirror[v]];
    return {ds.surface, md};
}

// Random vertex radii small enough that every edge keeps its circles strictly
// disjoint (any fraction of the shortest incident length below 1/2 works).
inline void randomize_radii(const Triangulation& T, DecoratedMetric& m, Rng& rng,
                            double lo = 0.2, double hi = 0.45) {
    std::vector<double> shortest(T.vertex_count(), std::numeric_limits<double>::infinity());
    for (int e : T.edges()) {
        auto [a, b] = T.edge_endpoints(e);
        shortest[a] = std::min(shortest[a], m.length[e]);
        shortest[b] = std::min(shortest[b], m.length[e]);
    }
    m.radius.resize(T.vertex_count());
    for (int v = 0; v < T.vertex_count(); ++v)
        m.radius[v] = uniform(rng, lo, hi) * shortest[v];
}

// Flip edge e while keeping the metric: the new diagonal gets its straight
// length from the common layout of the two faces.
inline int geodesic_flip(Triangulation& T, DecoratedMetric& m, int e) {
    double nl = flip_diagonal_length(T, m, e);
    int ne = T.flip(e);
    m.length.resize(T.edge_id_bound(), 0.0);
    m.length[ne] = nl;
    return ne;
}

// Geodesic flip that first checks the result stays a valid decorated metric:
// the new diagonal must clear the two vertex circles, and both faces the flip
// creates must stay robustly non-degenerate (comfortable area, disjoint
// circles, positive face circle), or later layouts of the scrambled surface
// fall over numerically. Returns the new edge id or -1 when the flip was
// skipped.
inline int try_geodesic_flip(Triangulation& T, DecoratedMetric& m, int e) {
    DecoratedQuad q;
    double nl;
    try {
        q = edge_quad(T, m, e);
        nl = quad_flip_length(q);
    } catch (const Error&) {
        return -1;
    }
    int h = T.edge_half_edge(e);
    int k = T.dest(T.next(h));
    int l = T.dest(T.next(T.twin(h)));
    double need = (k == l) ? 2.0 * m.radius[k] : m.radius[k] + m.radius[l];
    if (!(nl > need * (1.0 + 1e-6) + 1e-12)) return -1;
    auto area_sq = [](double a, double b, double c) {  // Heron, squared
        double s = 0.5 * (a + b + c);
        return s * (s - a) * (s - b) * (s - c);
    };
    double lmax = std::max({q.l_ij, q.l_jk, q.l_ki, q.l_il, q.l_lj, nl});
    double floor2 = 1e-12 * lmax * lmax * lmax * lmax;
    // new faces: (l, j, k) and (k, i, l), sides listed opposite each corner
    if (!(area_sq(q.l_jk, nl, q.l_lj) > floor2)) return -1;
    if (!(area_sq(q.l_il, nl, q.l_ki) > floor2)) return -1;
    try {
        triangle_power({q.l_jk, nl, q.l_lj}, {q.r_l, q.r_j, q.r_k});
        triangle_power({q.l_il, nl, q.l_ki}, {q.r_k, q.r_i, q.r_l});
    } catch (const Error&) {
        return -1;
    }
    int ne = T.flip(e);
    m.length.resize(T.edge_id_bound(), 0.0);
    m.length[ne] = nl;
    return ne;
}

// Scrambles the triangulation of a fixed surface by random metric-preserving
// flips; returns how many were performed.
inline int random_flips(Triangulation& T, DecoratedMetric& m, Rng& rng, int count) {
    int done = 0;
    for (int attempt = 0; attempt < 30 * count + 30 && done < count; ++attempt) {
        auto ids = T.edges();
        int e = ids[static_cast<size_t>(uniform(rng, 0.0, 1.0) * ids.size()) % ids.size()];
        if (try_geodesic_flip(T, m, e) >= 0) ++done;
    }
    return done;
}

// Random mean-free scale factors, shrunk until the conformal change is
// feasible on the given surface.
inline std::vector<double> feasible_random_u(const Triangulation& T, const DecoratedMetric& m,
                                             Rng& rng, double amplitude) {
    std::vector<double> u(T.vertex_count());
    for (double& x : u) x = uniform(rng, -1.0, 1.0);
    double mean = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(u.size());
    for (double& x : u) x = amplitude * (x - mean);
    for (int shrink = 0; shrink < 60; ++shrink) {
        try {
            conformal_apply(T, m, u);
            return u;
        } catch (const InfeasibleScaleError&) {
            for (double& x : u) x *= 0.5;
        }
    }
    std::fill(u.begin(), u.end(), 0.0);
    return u;
}

// Smallest Delaunay margin relative to its local scale over live edges.
inline double min_relative_margin(const Triangulation& T, const DecoratedMetric& m) {
    double worst = std::numeric_limits<double>::infinity();
    auto rep = edge_weight_report(T, m);
    for (int e : T.edges())
        worst = std::min(worst, rep.edge[e].margin / rep.edge[e].scale);
    return worst;
}

// Mean-free scale factors drawn until the changed surface is still weighted
// Delaunay on the same triangulation with a comfortable relative margin.
// Planting targets inside the current Delaunay cell keeps the planted
// factors exactly recoverable: scale-factor moves preserve the underlying
// conformal structure only while no flip is needed at either end, and
// near-flat edges at the solution make the recovery ill-conditioned.
inline std::vector<double> feasible_delaunay_u(const Triangulation& T, const DecoratedMetric& m,
                                               Rng& rng, double amplitude,
                                               double min_slack = 0.05) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<double> u = feasible_random_u(T, m, rng, amplitude);
        bool all_zero = true;
        for (double x : u)
            if (x != 0.0) all_zero = false;
        DecoratedMetric mt = conformal_apply(T, m, u);  // feasible by construction
        if (all_zero || min_relative_margin(T, mt) >= min_slack) return u;
        amplitude *= 0.8;
    }
    throw std::runtime_error("feasible_delaunay_u: no in-cell draw found");
}

// Random weighted Delaunay instance (torus, or sphere as a doubled polygon)
// with strictly positive margins and circle clearance, so finite-difference
// probes around it stay inside the feasible Delaunay cone. Throws after too
// many rejected draws.
inline ClosedInstance random_delaunay_instance(Rng& rng, bool sphere, double min_slack = 1e-3,
                                               double u_amplitude = 0.3) {
    for (int attempt = 0; attempt < 60; ++attempt) {
        ClosedInstance base;
        if (sphere) {
            int k = 4 + static_cast<int>(uniform(rng, 0.0, 3.999));
            base = double_instance(fan_disk(regular_polygon(k, uniform(rng, 0.8, 1.3))));
        } else {
            int pick = static_cast<int>(uniform(rng, 0.0, 2.999));
            base = pick == 0 ? grid_torus(2, 2) : pick == 1 ? grid_torus(3, 2) : grid_torus(2, 3);
        }
        randomize_radii(base.T, base.m, rng, 0.15, 0.4);
        std::vector<double> u = feasible_random_u(base.T, base.m, rng, u_amplitude);
        DecoratedMetric changed;
        try {
            changed = conformal_apply(base.T, base.m, u);
        } catch (const Error&) {
            continue;
        }
        FlipResult fr = flip_algorithm(base.T, changed);
        if (min_relative_margin(fr.T, fr.m) < min_slack) continue;
        double clearance = std::numeric_limits<double>::infinity();
        for (int e : fr.T.edges()) {
            auto [a, b] = fr.T.edge_endpoints(e);
            double need = a == b ? 2.0 * fr.m.radius[a] : fr.m.radius[a] + fr.m.radius[b];
            clearance = std::min(clearance, (fr.m.length[e] - need) / fr.m.length[e]);
        }
        if (clearance < 0.02) continue;
        return {fr.T, fr.m};
    }
    throw std::runtime_error("random_delaunay_instance: no feasible draw");
}

// Quad planted on plane coordinates: shared edge i-j on the x-axis, k above,
// l below. Optional radii keep all five edges' circles disjoint.
struct PlantedQuad {
    DecoratedQuad q;
    Eigen::Vector2d i, j, k, l;
};

inline PlantedQuad planted_quad(Rng& rng, bool with_radii) {
    PlantedQuad out;
    double lij = uniform(rng, 0.6, 2.0);
    out.i = {0.0, 0.0};
    out.j = {lij, 0.0};
    out.k = {uniform(rng, -0.8, lij + 0.8), uniform(rng, 0.15, 1.8)};
    out.l = {uniform(rng, -0.8, lij + 0.8), -uniform(rng, 0.15, 1.8)};
    DecoratedQuad& q = out.q;
    q.l_ij = lij;
    q.l_jk = (out.j - out.k).norm();
    q.l_ki = (out.k - out.i).norm();
    q.l_il = (out.i - out.l).norm();
    q.l_lj = (out.l - out.j).norm();
    q.r_i = q.r_j = q.r_k = q.r_l = 0.0;
    if (with_radii) {
        q.r_i = uniform(rng, 0.05, 0.45) * std::min({q.l_ij, q.l_ki, q.l_il});
        q.r_j = uniform(rng, 0.05, 0.45) * std::min({q.l_ij, q.l_jk, q.l_lj});
        q.r_k = uniform(rng, 0.05, 0.45) * std::min(q.l_jk, q.l_ki);
        q.r_l = uniform(rng, 0.05, 0.45) * std::min(q.l_il, q.l_lj);
    }
    return out;
}

inline std::vector<double> sorted_lengths(const Triangulation& T, const DecoratedMetric& m) {
    std::vector<double> out;
    for (int e : T.edges()) out.push_back(m.length[e]);
    std::sort(out.begin(), out.end());
    return out;
}

// Tanh-sinh quadrature over [a, b]; converges fast even with integrable
// endpoint singularities. Node density doubles until the value settles.
inline double tanh_sinh(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (b + a), d = 0.5 * (b - a);
    auto eval = [&](double x) -> double {
        double s = M_PI_2 * std::sinh(x);
        double t = std::tanh(s);
        if (1.0 - std::abs(t) < 1e-17) return 0.0;  // node would round onto an endpoint
        double w = M_PI_2 * std::cosh(x) / std::pow(std::cosh(s), 2);
        return w * f(c + d * t);
    };
    const double umax = 6.0;
    double h = 0.5;
    double sum = eval(0.0);
    for (double x = h; x < umax; x += h) sum += eval(x) + eval(-x);
    double prev = sum * h * d;
    for (int level = 0; level < 6; ++level) {
        h *= 0.5;
        for (double x = h; x < umax; x += 2.0 * h) sum += eval(x) + eval(-x);
        double cur = sum * h * d;
        if (level >= 3 && std::abs(cur - prev) < 1e-15 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

// -integral_0^x log|2 sin t| dt by quadrature, split at multiples of pi/2 so
// the integrand is singular only at interval endpoints.
inline double lobachevsky_quadrature(double x) {
    if (x < 0) return -lobachevsky_quadrature(-x);
    auto f = [](double t) { return -std::log(std::abs(2.0 * std::sin(t))); };
    double total = 0.0, a = 0.0;
    for (int k = 1; a < x; ++k) {
        double b = std::min(x, k * M_PI_2);
        if (b > a) total += tanh_sinh(f, a, b);
        a = b;
    }
    return total;
}

inline double central_difference(const std::function<double(double)>& g, double h) {
    return (g(h) - g(-h)) / (2.0 * h);
}

}  // namespace helpers
